"""
This package contains the managers composed into an
:class:`naive.api.context.EvalContext`.

"""
from naive.managers.cache import DensityCache
from naive.managers.store import ObservationStore


__all__ = [
    'DensityCache',
    'ObservationStore',
]
