"""
This package contains the naive API: densities, time shapes, the knowledge
base graph and the inference engine.

"""
from .context import EvalContext
from .density import Density
from .density import EventSet
from .density import GridPolicy
from .density import Interval
from .density import Range
from .density import make_delta
from .density import make_pmf
from .density import make_uniform
from .diagnostics import Codes
from .diagnostics import Diagnostic
from .diagnostics import Severity
from .diagnostics import SourceSpan
from .engine import Contradiction
from .engine import Observation
from .engine import check_consistency
from .engine import eval_trend
from .engine import evaluate
from .engine import explain
from .engine import report_observation
from .engine import resolve_datum
from .kb import KnowledgeBase
from .kb import VariableDef
from .kb import validate
from .manager import Manager
from .timebase import TimeSpec
from .trace import TraceNode


__all__ = [
    'check_consistency',
    'eval_trend',
    'evaluate',
    'explain',
    'make_delta',
    'make_pmf',
    'make_uniform',
    'report_observation',
    'resolve_datum',
    'validate',
    'Codes',
    'Contradiction',
    'Density',
    'Diagnostic',
    'EvalContext',
    'EventSet',
    'GridPolicy',
    'Interval',
    'KnowledgeBase',
    'Manager',
    'Observation',
    'Range',
    'Severity',
    'SourceSpan',
    'TimeSpec',
    'TraceNode',
    'VariableDef',
]
