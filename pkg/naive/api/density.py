# -*- coding: utf-8 -*-
"""
This module contains the density algebra: ranges, event sets and normalized
one-dimensional densities, together with every combination formula the
engine needs.

A cardinal density is made of point masses (atoms) plus a piecewise-constant
part (cells). Uniform and Dirac densities are therefore represented exactly;
operations whose exact result leaves that family (the convolution of two
piecewise-constant parts, products, quotients) re-project their result onto
a grid whose size is given by a :class:`GridPolicy`.

Categorical and ordinal densities are probability mass functions over the
labels of their range.

Densities are immutable values: every operation returns a new density.
"""
import logging
import math

import numpy as np

from naive.api.errors import (
    ContradictionError, DensityError, PartitionError, RangeError,
    SingularityError)
from naive.settings import Settings


def _logger():
    """ Returns the module's logger """
    return logging.getLogger(__name__)


#: Tolerance on the total mass of a density built from a grid path
MASS_TOLERANCE = 1e-6

ADD = 'add'
SUB = 'sub'
MUL = 'mul'
DIV = 'div'
#: Arithmetic operators understood by :func:`combine_arith`
OPERATORS = (ADD, SUB, MUL, DIV)

_EMPTY = np.empty(0)
_EMPTY.setflags(write=False)


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def format_number(value):
    """ Shortest text that reads back as the same float """
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


class Range(object):
    """
    The collectively exhaustive and mutually exclusive set of values a
    variable can assume.

    Use one of the class methods to create a range::

        weight = Range.cardinal(1, 300, unit='kg')
        sex = Range.categorical(['female', 'male'])
        trend = Range.ordinal(['decreasing', 'stable', 'increasing'])

    Two ranges are equal when they describe the same values; the optional
    ``name`` only records how the range was declared.
    """
    CATEGORICAL = 'categorical'
    ORDINAL = 'ordinal'
    CARDINAL = 'cardinal'
    KINDS = (CATEGORICAL, ORDINAL, CARDINAL)

    def __init__(self, kind, labels=None, lower=None, upper=None, unit='',
                 name=None):
        if kind not in self.KINDS:
            raise RangeError('unknown range kind: %r' % (kind, ))
        self.kind = kind
        self.name = name
        self.unit = unit or ''
        if kind == self.CARDINAL:
            try:
                lower = float(lower)
                upper = float(upper)
            except (TypeError, ValueError):
                raise RangeError('cardinal bounds must be numbers')
            if not (math.isfinite(lower) and math.isfinite(upper)):
                raise RangeError('cardinal bounds must be finite')
            if not lower < upper:
                raise RangeError(
                    'empty cardinal range [%s, %s]' % (
                        format_number(lower), format_number(upper)))
            self.labels = ()
            self.lower = lower
            self.upper = upper
        else:
            labels = tuple(labels or ())
            if not labels:
                raise RangeError('%s range without labels' % kind)
            if len(set(labels)) != len(labels):
                raise RangeError('duplicate labels in %r' % (labels, ))
            self.labels = labels
            self.lower = None
            self.upper = None

    @classmethod
    def cardinal(cls, lower, upper, unit='', name=None):
        """ Creates a cardinal range ``[lower, upper]`` """
        return cls(cls.CARDINAL, lower=lower, upper=upper, unit=unit,
                   name=name)

    @classmethod
    def ordinal(cls, labels, name=None):
        """ Creates an ordinal range, labels are given in ascending order """
        return cls(cls.ORDINAL, labels=labels, name=name)

    @classmethod
    def categorical(cls, labels, name=None):
        """ Creates a categorical range """
        return cls(cls.CATEGORICAL, labels=labels, name=name)

    @property
    def is_cardinal(self):
        return self.kind == self.CARDINAL

    @property
    def is_discrete(self):
        return self.kind != self.CARDINAL

    @property
    def span(self):
        """ Width of a cardinal range """
        return self.upper - self.lower

    def index(self, label):
        """
        Returns the position of a label.

        :raises: RangeError if the label does not belong to the range.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            raise RangeError('unknown label %r (expected one of %s)' % (
                label, ', '.join(self.labels)), self)

    def contains(self, value):
        """ Tells whether a value (number or label) belongs to the range """
        if self.is_cardinal:
            return self.lower <= value <= self.upper
        return value in self.labels

    def _key(self):
        return (self.kind, self.labels, self.lower, self.upper, self.unit)

    def __eq__(self, other):
        return isinstance(other, Range) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def to_dict(self):
        """
        Serializes a range to a dictionary, ready for json.
        """
        if self.is_cardinal:
            return {'kind': self.kind, 'lower': self.lower,
                    'upper': self.upper, 'unit': self.unit}
        return {'kind': self.kind, 'labels': list(self.labels)}

    @staticmethod
    def from_dict(ddict):
        """
        Deserializes a range from a simple dict.
        """
        return Range(ddict['kind'], labels=ddict.get('labels'),
                     lower=ddict.get('lower'), upper=ddict.get('upper'),
                     unit=ddict.get('unit', ''))

    def __repr__(self):
        if self.is_cardinal:
            return 'Range.cardinal(%s, %s, unit=%r)' % (
                format_number(self.lower), format_number(self.upper),
                self.unit)
        return 'Range.%s(%r)' % (self.kind, list(self.labels))


class Interval(object):
    """
    An interval of the real line, closed by default.

    Closure flags let a threshold partition assign a value sitting exactly on
    a boundary to a single label (``[60, 70)`` and ``[70, 120]``).
    """
    def __init__(self, lower, upper, lower_closed=True, upper_closed=True):
        lower = float(lower)
        upper = float(upper)
        if lower > upper or (lower == upper and not
                             (lower_closed and upper_closed)):
            raise RangeError('empty interval %s' % self._text(
                lower, upper, lower_closed, upper_closed))
        self.lower = lower
        self.upper = upper
        self.lower_closed = bool(lower_closed)
        self.upper_closed = bool(upper_closed)

    @staticmethod
    def _text(lower, upper, lower_closed, upper_closed):
        return '%s%s, %s%s' % ('[' if lower_closed else '(',
                               format_number(lower), format_number(upper),
                               ']' if upper_closed else ')')

    @property
    def length(self):
        return self.upper - self.lower

    def contains(self, x):
        """
        Vectorized membership test.

        :param x: number or numpy array
        """
        x = np.asarray(x, dtype=float)
        low = x >= self.lower if self.lower_closed else x > self.lower
        high = x <= self.upper if self.upper_closed else x < self.upper
        return low & high

    def _key(self):
        return (self.lower, self.upper, self.lower_closed, self.upper_closed)

    def __eq__(self, other):
        return isinstance(other, Interval) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return self._text(*self._key())

    def __repr__(self):
        return 'Interval(%s)' % self


class EventSet(object):
    """
    A set of values of a range: a subset of labels (categorical/ordinal) or a
    finite union of sorted, disjoint intervals (cardinal).
    """
    def __init__(self, labels=None, intervals=None):
        if (labels is None) == (intervals is None):
            raise RangeError('an event set holds either labels or intervals')
        if labels is not None:
            self.labels = tuple(labels)
            self.intervals = None
            return
        items = []
        for item in intervals:
            if not isinstance(item, Interval):
                item = Interval(*item)
            items.append(item)
        items.sort(key=lambda i: (i.lower, not i.lower_closed))
        for prev, nxt in zip(items, items[1:]):
            if (nxt.lower < prev.upper or
                    (nxt.lower == prev.upper and prev.upper_closed and
                     nxt.lower_closed)):
                raise RangeError('overlapping intervals %s and %s' % (
                    prev, nxt))
        self.labels = None
        self.intervals = tuple(items)

    @classmethod
    def of_labels(cls, *labels):
        """ Event set made of the given labels """
        return cls(labels=labels)

    @classmethod
    def of_intervals(cls, intervals):
        """ Event set made of a union of intervals """
        return cls(intervals=intervals)

    @classmethod
    def interval(cls, lower, upper, lower_closed=True, upper_closed=True):
        """ Event set made of a single interval """
        return cls(intervals=[Interval(lower, upper, lower_closed,
                                       upper_closed)])

    @property
    def is_discrete(self):
        return self.labels is not None

    def check(self, range_):
        """
        Checks the event set against a range.

        :raises: RangeError on incompatible kinds, unknown labels or
            intervals outside the range bounds.
        """
        if range_.is_discrete != self.is_discrete:
            raise RangeError('event set of the wrong kind for %r' % range_,
                             range_)
        if self.is_discrete:
            for label in self.labels:
                range_.index(label)
        else:
            for item in self.intervals:
                if item.lower < range_.lower or item.upper > range_.upper:
                    raise RangeError('%s is outside %r' % (item, range_),
                                     range_)

    def contains(self, x):
        """ Vectorized membership test for a cardinal event set """
        x = np.asarray(x, dtype=float)
        mask = np.zeros(x.shape, dtype=bool)
        for item in self.intervals:
            mask |= item.contains(x)
        return mask

    def __eq__(self, other):
        return (isinstance(other, EventSet) and
                self.labels == other.labels and
                self.intervals == other.intervals)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.labels, self.intervals))

    def __str__(self):
        if self.is_discrete:
            return '{%s}' % ', '.join(self.labels)
        return ' | '.join(str(i) for i in self.intervals)

    def __repr__(self):
        return 'EventSet(%s)' % self


class GridPolicy(object):
    """
    Controls the re-projection grid.

    Only :func:`combine_arith` re-projects: the piece/piece part of a sum or
    a difference, every piece/piece product or quotient, the quotient of an
    atom by a piecewise-constant part, and any exact result that ends up
    with more cells than the resolution. All the other operations are exact
    on the atoms + cells family.
    """
    #: Number of quantile points per operand used by the sampling path
    #: of one-dimensional (atom by piece) transforms, per grid cell
    OVERSAMPLING = 16

    def __init__(self, resolution=None):
        """
        :param resolution: cell count of the grid. Default is read from
            :attr:`naive.settings.Settings.grid_resolution`.
        """
        if resolution is None:
            resolution = Settings().grid_resolution
        resolution = int(resolution)
        if resolution < Settings.MIN_GRID:
            raise ValueError('grid resolution must be >= %d' %
                             Settings.MIN_GRID)
        self.resolution = resolution

    def __eq__(self, other):
        return (isinstance(other, GridPolicy) and
                self.resolution == other.resolution)

    def __hash__(self):
        return hash(self.resolution)

    def __repr__(self):
        return 'GridPolicy(%d)' % self.resolution


# -------------------
# Cell helpers
# -------------------
def _cumulative(edges, heights):
    if not len(heights):
        return np.zeros(1)
    return np.concatenate(([0.0], np.cumsum(heights * np.diff(edges))))


def _heights_at(edges, heights, x):
    """ Right-continuous value of a piecewise-constant function """
    x = np.asarray(x, dtype=float)
    if not len(heights):
        return np.zeros(x.shape)
    idx = np.searchsorted(edges, x, side='right') - 1
    idx = np.where(x == edges[-1], len(heights) - 1, idx)
    valid = (idx >= 0) & (idx < len(heights))
    return np.where(valid, heights[np.clip(idx, 0, len(heights) - 1)], 0.0)


def _closed_heights_at(edges, heights, x):
    """ Max of the left and right limits: the support of a cell is closed """
    x = np.asarray(x, dtype=float)
    if not len(heights):
        return np.zeros(x.shape)
    right = _heights_at(edges, heights, x)
    idx = np.searchsorted(edges, x, side='left') - 1
    valid = (idx >= 0) & (idx < len(heights))
    left = np.where(valid, heights[np.clip(idx, 0, len(heights) - 1)], 0.0)
    return np.maximum(left, right)


def _tidy_atoms(xs, ms):
    xs = np.asarray(xs, dtype=float).ravel()
    ms = np.asarray(ms, dtype=float).ravel()
    if np.any(ms < 0):
        raise DensityError('negative atom mass')
    keep = ms > 0
    xs, ms = xs[keep], ms[keep]
    if not len(xs):
        return _EMPTY, _EMPTY
    unique, inverse = np.unique(xs, return_inverse=True)
    masses = np.zeros(len(unique))
    np.add.at(masses, inverse, ms)
    return unique, masses


def _tidy_cells(edges, heights):
    """ Trims zero tails and merges neighbours of equal height """
    edges = np.asarray(edges, dtype=float).ravel()
    heights = np.asarray(heights, dtype=float).ravel()
    if not len(heights):
        return _EMPTY, _EMPTY
    if len(edges) != len(heights) + 1:
        raise DensityError('cells need one more edge than heights')
    if np.any(np.diff(edges) <= 0):
        raise DensityError('cell edges must be strictly increasing')
    if np.any(heights < 0):
        raise DensityError('negative cell height')
    positive = np.nonzero(heights > 0)[0]
    if not len(positive):
        return _EMPTY, _EMPTY
    first, last = positive[0], positive[-1]
    edges = edges[first:last + 2]
    heights = heights[first:last + 1]
    change = np.concatenate(([True], heights[1:] != heights[:-1]))
    idx = np.nonzero(change)[0]
    return (np.concatenate((edges[idx], edges[-1:])), heights[idx])


def _sum_cells(components):
    """ Pointwise sum of piecewise-constant functions (exact) """
    components = [(e, h) for e, h in components if len(h)]
    if not components:
        return _EMPTY, _EMPTY
    if len(components) == 1:
        return components[0]
    edges = np.unique(np.concatenate([e for e, _ in components]))
    mids = 0.5 * (edges[:-1] + edges[1:])
    heights = np.zeros(len(mids))
    for e, h in components:
        heights += _heights_at(e, h, mids)
    return edges, heights


def _project(edges, heights, grid_edges):
    """ Mass preserving projection of cells onto a grid """
    cum = _cumulative(edges, heights)
    masses = np.diff(np.interp(grid_edges, edges, cum))
    return masses / np.diff(grid_edges)


def _uniform_grid(lower, upper, resolution):
    return np.linspace(lower, upper, resolution + 1)


# -------------------
# Density
# -------------------
class Density(object):
    """
    A normalized density over a range.

    Do not call the constructor with arbitrary data: prefer
    :func:`make_uniform`, :func:`make_delta` and :func:`make_pmf`, or one of
    the operations of this module. The constructor checks every invariant:

        - total mass is 1 (within ``tolerance``)
        - masses, heights and probabilities are non negative
        - atoms and cells lie within the range bounds
        - cardinal densities have no pmf, discrete ones have no atom/cell
    """
    def __init__(self, range_, atoms=None, pieces=None, pmf=None,
                 clamped_mass=0.0, tolerance=MASS_TOLERANCE):
        """
        :param range_: :class:`Range` of the density
        :param atoms: list of (location, mass)
        :param pieces: list of (left edge, right edge, height); cells must
            be sorted and must not overlap.
        :param pmf: dict label -> probability, or sequence aligned on the
            range labels
        :param clamped_mass: mass moved onto a range boundary by the
            operation that produced the density
        :param tolerance: accepted deviation of the total mass from 1
        """
        atoms = list(atoms or ())
        pieces = list(pieces or ())
        edges, heights = _EMPTY, _EMPTY
        if pieces:
            edge_list = [pieces[0][0]]
            height_list = []
            for left, right, height in pieces:
                if left < edge_list[-1]:
                    raise DensityError('overlapping or unsorted cells')
                if left > edge_list[-1]:
                    edge_list.append(left)
                    height_list.append(0.0)
                edge_list.append(right)
                height_list.append(height)
            edges, heights = np.array(edge_list), np.array(height_list)
        xs = np.array([a[0] for a in atoms], dtype=float)
        ms = np.array([a[1] for a in atoms], dtype=float)
        probs = None
        if pmf is not None:
            if range_.is_cardinal:
                raise DensityError('a cardinal density has no pmf')
            if isinstance(pmf, dict):
                probs = np.zeros(len(range_.labels))
                for label, p in pmf.items():
                    probs[range_.index(label)] = p
            else:
                probs = np.asarray(pmf, dtype=float)
        self._setup(range_, xs, ms, edges, heights, probs, clamped_mass,
                    tolerance)

    @classmethod
    def from_arrays(cls, range_, atom_x=_EMPTY, atom_m=_EMPTY, edges=_EMPTY,
                    heights=_EMPTY, probs=None, clamped_mass=0.0,
                    tolerance=MASS_TOLERANCE):
        """
        Builds a density from numpy arrays (``edges`` has one more element
        than ``heights``). Used by the operations of this module.
        """
        density = cls.__new__(cls)
        density._setup(range_, atom_x, atom_m, edges, heights, probs,
                       clamped_mass, tolerance)
        return density

    def _setup(self, range_, xs, ms, edges, heights, probs, clamped_mass,
               tolerance):
        self._range = range_
        self._clamped = float(clamped_mass)
        if range_.is_discrete:
            if len(xs) or len(heights):
                raise DensityError('a %s density has no atom nor cell' %
                                   range_.kind)
            if probs is None or len(probs) != len(range_.labels):
                raise DensityError('pmf must have one entry per label')
            probs = np.asarray(probs, dtype=float)
            if np.any(probs < 0) or not np.all(np.isfinite(probs)):
                raise DensityError('invalid probability in %r' % (probs, ))
            total = probs.sum()
            self._probs = _frozen(probs)
            self._ax = self._am = self._edges = self._heights = _EMPTY
        else:
            if probs is not None:
                raise DensityError('a cardinal density has no pmf')
            xs, ms = _tidy_atoms(xs, ms)
            edges, heights = _tidy_cells(edges, heights)
            slack = 1e-9 * range_.span
            for values in (xs, edges):
                if len(values) and (values[0] < range_.lower - slack or
                                    values[-1] > range_.upper + slack):
                    raise RangeError('density outside %r' % range_, range_)
            if len(edges):
                edges = np.clip(edges, range_.lower, range_.upper)
            if len(xs):
                xs = np.clip(xs, range_.lower, range_.upper)
            self._ax, self._am = _frozen(xs), _frozen(ms)
            self._edges, self._heights = _frozen(edges), _frozen(heights)
            self._probs = None
            total = ms.sum() + _cumulative(edges, heights)[-1]
        if not abs(total - 1.0) <= tolerance:
            raise DensityError('total mass is %r, expected 1' % total)

    # -------------------
    # Properties
    # -------------------
    @property
    def range(self):
        """ The :class:`Range` of the density """
        return self._range

    @property
    def kind(self):
        return self._range.kind

    @property
    def is_discrete(self):
        return self._range.is_discrete

    @property
    def atoms(self):
        """ List of (location, mass) """
        return [(float(x), float(m)) for x, m in zip(self._ax, self._am)]

    @property
    def pieces(self):
        """ List of (left edge, right edge, height) of the non empty cells """
        return [(float(self._edges[i]), float(self._edges[i + 1]),
                 float(h)) for i, h in enumerate(self._heights) if h > 0]

    @property
    def discrete(self):
        """ List of (label, probability) in range order """
        if self._probs is None:
            return []
        return [(label, float(p)) for label, p in
                zip(self._range.labels, self._probs)]

    @property
    def pmf(self):
        """ Dict label -> probability (empty for cardinal densities) """
        return dict(self.discrete)

    @property
    def atom_locations(self):
        return self._ax

    @property
    def atom_masses(self):
        return self._am

    @property
    def edges(self):
        return self._edges

    @property
    def heights(self):
        return self._heights

    @property
    def probabilities(self):
        return self._probs

    @property
    def clamped_mass(self):
        """
        Fraction of the mass moved onto a range boundary when the density was
        computed.
        """
        return self._clamped

    @property
    def continuous_mass(self):
        return float(_cumulative(self._edges, self._heights)[-1])

    @property
    def total_mass(self):
        if self.is_discrete:
            return float(self._probs.sum())
        return float(self._am.sum()) + self.continuous_mass

    @property
    def is_delta(self):
        """ True for a single atom of mass 1 (complete certainty) """
        return (not self.is_discrete and len(self._ax) == 1 and
                not len(self._heights))

    # -------------------
    # Shortcuts
    # -------------------
    def pdf(self, x):
        return pdf(self, x)

    def cdf(self, x):
        return cdf(self, x)

    def prob_in(self, event_set):
        return prob_in(self, event_set)

    def moments(self):
        return moments(self)

    def quantile(self, p):
        return quantile(self, p)

    def support(self):
        return support(self)

    @property
    def mean(self):
        return moments(self)[0]

    @property
    def variance(self):
        return moments(self)[1]

    def allclose(self, other, tol=1e-9):
        """
        Compares two densities through their CDFs (maximum absolute
        difference, evaluated at every breakpoint of both densities).
        """
        if self._range != other.range:
            return False
        if self.is_discrete:
            return bool(np.all(np.abs(self._probs - other.probabilities) <=
                               tol))
        points = np.unique(np.concatenate((
            self._ax, self._edges, other.atom_locations, other.edges)))
        if not len(points):
            return True
        mids = 0.5 * (points[:-1] + points[1:])
        points = np.concatenate((points, mids))
        return bool(np.all(np.abs(cdf(self, points) - cdf(other, points)) <=
                           tol))

    # -------------------
    # Serialization
    # -------------------
    def to_dict(self):
        """
        Serializes a density to a dictionary, ready for json.
        """
        ddict = {'range': self._range.to_dict()}
        if self.is_discrete:
            ddict['pmf'] = self.pmf
        else:
            ddict['atoms'] = [list(a) for a in self.atoms]
            ddict['pieces'] = [list(p) for p in self.pieces]
        return ddict

    @staticmethod
    def from_dict(ddict):
        """
        Deserializes a density from a simple dict.
        """
        range_ = Range.from_dict(ddict['range'])
        if range_.is_discrete:
            return Density(range_, pmf=ddict['pmf'])
        return Density(range_, atoms=[tuple(a) for a in ddict['atoms']],
                       pieces=[tuple(p) for p in ddict['pieces']])

    def to_csv_rows(self, resolution=None):
        """
        Returns the rows of a density export: ``(x, pdf, cdf)`` on a grid of
        the range (atom locations included so that the CDF jumps are
        visible), or ``(label, probability, cumulative)`` for discrete
        densities.
        """
        if self.is_discrete:
            cum = np.cumsum(self._probs)
            return [(label, float(p), float(c)) for (label, p), c in
                    zip(self.discrete, cum)]
        if resolution is None:
            resolution = GridPolicy().resolution
        xs = np.union1d(_uniform_grid(self._range.lower, self._range.upper,
                                      resolution), self._ax)
        return [(float(x), float(p), float(c)) for x, p, c in
                zip(xs, pdf(self, xs), cdf(self, xs))]

    def __eq__(self, other):
        if not isinstance(other, Density) or self._range != other.range:
            return False
        if self.is_discrete:
            return bool(np.array_equal(self._probs, other.probabilities))
        return (np.array_equal(self._ax, other.atom_locations) and
                np.array_equal(self._am, other.atom_masses) and
                np.array_equal(self._edges, other.edges) and
                np.array_equal(self._heights, other.heights))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        if self.is_discrete:
            return 'Density(%s)' % ', '.join(
                '%s=%.6g' % item for item in self.discrete)
        parts = ['atom %s: %.6g' % (format_number(x), m)
                 for x, m in self.atoms]
        pieces = self.pieces
        if len(pieces) <= 4:
            parts += ['[%s, %s]: %.6g' % (format_number(l), format_number(r),
                                          h) for l, r, h in pieces]
        else:
            parts.append('%d cells on [%s, %s]' % (
                len(pieces), format_number(self._edges[0]),
                format_number(self._edges[-1])))
        return 'Density(%s)' % ', '.join(parts)


def _cardinal_result(range_, xs, ms, edges, heights, clamped=0.0,
                     tolerance=MASS_TOLERANCE):
    """ Normalizes raw parts and builds the density """
    xs, ms = _tidy_atoms(xs, ms)
    edges, heights = _tidy_cells(edges, heights)
    total = ms.sum() + _cumulative(edges, heights)[-1]
    if total <= 0:
        raise ContradictionError('no probability mass left')
    return Density.from_arrays(range_, xs, ms / total, edges,
                               heights / total, clamped_mass=clamped,
                               tolerance=tolerance)


def _require_cardinal(*densities):
    for density in densities:
        if not density.range.is_cardinal:
            raise RangeError('a cardinal density is required, got a %s one'
                             % density.kind, density.range)


# -------------------
# Constructors
# -------------------
def make_uniform(lo, hi, range_):
    """
    Uniform density over ``[lo, hi]``, i.e. an inexact statement about a
    value.

    :raises: RangeError when the interval is empty or leaves the range.
    """
    if not range_.is_cardinal:
        raise RangeError('uniform densities need a cardinal range', range_)
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise RangeError('empty interval [%s, %s]' % (
            format_number(lo), format_number(hi)), range_)
    if lo < range_.lower or hi > range_.upper:
        raise RangeError('[%s, %s] is outside %r' % (
            format_number(lo), format_number(hi), range_), range_)
    return Density.from_arrays(range_, edges=np.array([lo, hi]),
                               heights=np.array([1.0 / (hi - lo)]),
                               tolerance=1e-9)


def make_delta(x, range_):
    """
    Dirac density at ``x``: complete certainty about a value.

    :raises: RangeError when ``x`` is outside the range.
    """
    if not range_.is_cardinal:
        raise RangeError('Dirac densities need a cardinal range', range_)
    x = float(x)
    if not range_.lower <= x <= range_.upper:
        raise RangeError('%s is outside %r' % (format_number(x), range_),
                         range_)
    return Density.from_arrays(range_, atom_x=np.array([x]),
                               atom_m=np.array([1.0]), tolerance=1e-9)


def make_pmf(weights, range_):
    """
    Normalized probability mass function over a categorical or ordinal
    range. Labels missing from ``weights`` get probability 0.

    :param weights: dict label -> weight, or list of (label, weight)
    :raises: RangeError for unknown labels, DensityError for invalid
        weights.
    """
    if range_.is_cardinal:
        raise RangeError('pmf densities need a categorical or ordinal range',
                         range_)
    if isinstance(weights, dict):
        weights = list(weights.items())
    probs = np.zeros(len(range_.labels))
    for label, weight in weights:
        weight = float(weight)
        if weight < 0 or not math.isfinite(weight):
            raise DensityError('invalid weight %r for %r' % (weight, label))
        probs[range_.index(label)] += weight
    total = probs.sum()
    if total <= 0:
        raise DensityError('pmf weights sum to zero')
    return Density.from_arrays(range_, probs=probs / total, tolerance=1e-9)


# -------------------
# Queries
# -------------------
def prob_in(f, g):
    """
    Probability that the value described by ``f`` belongs to the event set
    ``g``.

    :raises: RangeError if ``g`` does not fit ``f.range``.
    """
    g.check(f.range)
    if f.is_discrete:
        probs = f.probabilities
        return float(min(1.0, sum(probs[f.range.index(l)]
                                  for l in set(g.labels))))
    total = float(f.atom_masses[g.contains(f.atom_locations)].sum())
    if len(f.heights):
        cum = _cumulative(f.edges, f.heights)
        for item in g.intervals:
            low, high = np.interp([item.lower, item.upper], f.edges, cum)
            total += high - low
    return min(1.0, max(0.0, total))


def pdf(f, x):
    """
    Value of the piecewise-constant part at ``x`` (atoms are not included).
    For discrete densities, ``x`` is a label and its probability is
    returned.
    """
    if f.is_discrete:
        return float(f.probabilities[f.range.index(x)])
    values = _heights_at(f.edges, f.heights, x)
    if np.ndim(values) == 0:
        return float(values)
    return values


def cdf(f, x):
    """
    ``Prob(X <= x)`` for a cardinal density (atoms at ``x`` included).
    """
    _require_cardinal(f)
    x = np.asarray(x, dtype=float)
    values = np.interp(x, f.edges, _cumulative(f.edges, f.heights)) \
        if len(f.heights) else np.zeros(x.shape)
    if len(f.atom_locations):
        cum = np.concatenate(([0.0], np.cumsum(f.atom_masses)))
        values = values + cum[np.searchsorted(f.atom_locations, x,
                                              side='right')]
    if np.ndim(values) == 0:
        return float(values)
    return values


def support(f):
    """
    Smallest closed :class:`Interval` holding all the mass of a cardinal
    density, or the :class:`EventSet` of the labels with a positive
    probability.
    """
    if f.is_discrete:
        return EventSet.of_labels(*[l for l, p in f.discrete if p > 0])
    bounds = [v for v in (f.atom_locations, f.edges) if len(v)]
    low = min(v[0] for v in bounds)
    high = max(v[-1] for v in bounds)
    return Interval(low, high)


def likelihood(f, x):
    """
    Density of ``f`` at a point, atoms included: the mass of a coinciding
    atom plus the closed local height of the piecewise-constant part.
    """
    _require_cardinal(f)
    x = float(x)
    mass = float(f.atom_masses[f.atom_locations == x].sum())
    return mass + float(_closed_heights_at(f.edges, f.heights, x))


def moments(f):
    """
    Exact mean and variance of a cardinal density.

    :returns: (mean, variance)
    """
    _require_cardinal(f)
    xs, ms = f.atom_locations, f.atom_masses
    left, right, heights = f.edges[:-1], f.edges[1:], f.heights
    mean = float(np.dot(xs, ms)) + float(
        np.sum(heights * (right ** 2 - left ** 2)) / 2.0)
    variance = float(np.dot((xs - mean) ** 2, ms)) + float(
        np.sum(heights * ((right - mean) ** 3 - (left - mean) ** 3)) / 3.0)
    return mean, max(0.0, variance)


def quantile(f, p):
    """
    Left-continuous inverse CDF: the smallest ``x`` with ``cdf(x) >= p``.

    :raises: RangeError if ``p`` is not a probability.
    """
    _require_cardinal(f)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise RangeError('%r is not a probability' % p)
    points = np.union1d(f.atom_locations, f.edges)
    cum = 0.0
    last = float(points[-1])
    for i, x in enumerate(points):
        mass = float(f.atom_masses[f.atom_locations == x].sum())
        if mass > 0 and cum + mass >= p:
            return float(x)
        cum += mass
        if i + 1 < len(points):
            height = float(_heights_at(f.edges, f.heights,
                                       0.5 * (x + points[i + 1])))
            cell = height * (points[i + 1] - x)
            if cell > 0 and cum + cell >= p:
                return float(x + (p - cum) / height)
            cum += cell
    return last


# -------------------
# Arithmetic
# -------------------
_NUMPY_OPS = {ADD: np.add, SUB: np.subtract, MUL: np.multiply,
              DIV: np.divide}


def _affine_cells(edges, heights, scale, shift):
    """
    Image of cells under ``x -> scale * x + shift`` (scale != 0).
    """
    new_edges = edges * scale + shift
    new_heights = heights / abs(scale)
    if scale < 0:
        new_edges = new_edges[::-1]
        new_heights = new_heights[::-1]
    return new_edges, new_heights


def _quantile_points(edges, heights, count):
    """ Midpoints of ``count`` slices of equal mass of a cell part """
    cum = _cumulative(edges, heights)
    targets = (np.arange(count) + 0.5) / count * cum[-1]
    return np.interp(targets, cum, edges), cum[-1] / count


def _histogram(values, weights, resolution):
    """ Projects weighted points onto a uniform grid of cells """
    low, high = values.min(), values.max()
    if not high > low:
        return np.array([low]), np.array([weights.sum()]), _EMPTY, _EMPTY
    grid = _uniform_grid(low, high, resolution)
    masses, _ = np.histogram(values, bins=grid, weights=weights)
    return _EMPTY, _EMPTY, grid, masses / np.diff(grid)


def _convolve_cells(e1, h1, e2, h2, resolution):
    """
    Density of X + Y for two independent cell parts.

    Both parts are projected onto grids of the same cell width; the sum of
    two boxes of width w is a triangle of width 2w that puts half of its
    mass in each of the two cells it covers, so the cell masses of the
    exact convolution of the projected parts follow from a discrete
    convolution.
    """
    span1 = e1[-1] - e1[0]
    span2 = e2[-1] - e2[0]
    width = (span1 + span2) / resolution
    n1 = max(1, int(math.ceil(span1 / width - 1e-9)))
    n2 = max(1, int(math.ceil(span2 / width - 1e-9)))
    g1 = e1[0] + width * np.arange(n1 + 1)
    g2 = e2[0] + width * np.arange(n2 + 1)
    p1 = _project(e1, h1, g1) * width
    p2 = _project(e2, h2, g2) * width
    conv = np.convolve(p1, p2)
    masses = 0.5 * (np.concatenate((conv, [0.0])) +
                    np.concatenate(([0.0], conv)))
    edges = e1[0] + e2[0] + width * np.arange(n1 + n2 + 1)
    return edges, masses / width


def _check_divisor(g, neighborhood):
    half = neighborhood * g.range.span
    low, high = -half, half
    near = (g.atom_locations >= low) & (g.atom_locations <= high)
    if np.any(near):
        raise SingularityError(low, high)
    if len(g.heights):
        positive = g.heights > 0
        touching = (g.edges[:-1] <= high) & (g.edges[1:] >= low)
        if np.any(positive & touching):
            raise SingularityError(low, high)


def _clamp(xs, ms, edges, heights, lower, upper):
    """
    Moves the mass lying outside ``[lower, upper]`` onto boundary atoms.

    :returns: atoms, masses, edges, heights, moved mass
    """
    below = xs < lower
    above = xs > upper
    moved_low = float(ms[below].sum())
    moved_high = float(ms[above].sum())
    keep = ~(below | above)
    xs, ms = xs[keep], ms[keep]
    inside = float(ms.sum())
    if len(heights):
        cum = _cumulative(edges, heights)
        c_low, c_high = np.interp([lower, upper], edges, cum)
        moved_low += float(c_low)
        moved_high += float(cum[-1] - c_high)
        low = max(lower, edges[0])
        high = min(upper, edges[-1])
        if high > low:
            inner = edges[(edges > low) & (edges < high)]
            new_edges = np.concatenate(([low], inner, [high]))
            mids = 0.5 * (new_edges[:-1] + new_edges[1:])
            heights = _heights_at(edges, heights, mids)
            edges = new_edges
            inside += float(np.sum(heights * np.diff(edges)))
        else:
            edges, heights = _EMPTY, _EMPTY
    if inside <= 0 and moved_low + moved_high > 0:
        raise RangeError('no mass left within [%s, %s]' % (
            format_number(lower), format_number(upper)))
    extra_x, extra_m = [], []
    if moved_low > 0:
        extra_x.append(lower)
        extra_m.append(moved_low)
    if moved_high > 0:
        extra_x.append(upper)
        extra_m.append(moved_high)
    xs = np.concatenate((xs, extra_x))
    ms = np.concatenate((ms, extra_m))
    return xs, ms, edges, heights, moved_low + moved_high


def combine_arith(op, f, g, out_range, grid=None, zero_neighborhood=None):
    """
    Density of ``f op g`` for two stochastically independent cardinal
    densities.

    Atom/atom and atom/piece parts are exact (shift and scale of the cells),
    except the quotient of an atom by a piecewise-constant part; piece/piece
    parts are re-projected on the grid. Mass falling outside ``out_range``
    is moved onto an atom at the nearest boundary and reported through
    :attr:`Density.clamped_mass`.

    :param op: one of :data:`OPERATORS`
    :param out_range: cardinal range of the result
    :param grid: :class:`GridPolicy`, default policy if None
    :param zero_neighborhood: half-width of the neighborhood of 0 a divisor
        must avoid, as a fraction of the divisor range span.

    :raises: SingularityError (division), RangeError (no overlap with
        ``out_range``)
    """
    if op not in OPERATORS:
        raise ValueError('unknown operator: %r' % (op, ))
    _require_cardinal(f, g)
    if not out_range.is_cardinal:
        raise RangeError('arithmetic results need a cardinal range',
                         out_range)
    if grid is None:
        grid = GridPolicy()
    if zero_neighborhood is None:
        zero_neighborhood = Settings().zero_neighborhood
    if op == DIV:
        _check_divisor(g, zero_neighborhood)
    func = _NUMPY_OPS[op]
    resolution = grid.resolution
    fx, fm, fe, fh = f.atom_locations, f.atom_masses, f.edges, f.heights
    gx, gm, ge, gh = g.atom_locations, g.atom_masses, g.edges, g.heights
    f_cont = f.continuous_mass
    g_cont = g.continuous_mass
    atoms_x = [func.outer(fx, gx).ravel()]
    atoms_m = [np.outer(fm, gm).ravel()]
    cells = []
    # atom of f with the cells of g
    for a, m in zip(fx, fm):
        if not len(gh):
            break
        if op == DIV:
            ys, w = _quantile_points(ge, gh, resolution * grid.OVERSAMPLING)
            hx, hm, he, hh = _histogram(a / ys, np.full(len(ys), w * m),
                                        resolution)
            atoms_x.append(hx)
            atoms_m.append(hm)
            cells.append((he, hh))
            continue
        scale, shift = {ADD: (1.0, a), SUB: (-1.0, a), MUL: (a, 0.0)}[op]
        if scale == 0:
            atoms_x.append(np.array([0.0]))
            atoms_m.append(np.array([m * g_cont]))
        else:
            e, h = _affine_cells(ge, gh, scale, shift)
            cells.append((e, h * m))
    # cells of f with an atom of g
    for b, m in zip(gx, gm):
        if not len(fh):
            break
        scale, shift = {ADD: (1.0, b), SUB: (1.0, -b), MUL: (b, 0.0),
                        DIV: (1.0 / b, 0.0)}[op]
        if scale == 0:
            atoms_x.append(np.array([0.0]))
            atoms_m.append(np.array([m * f_cont]))
        else:
            e, h = _affine_cells(fe, fh, scale, shift)
            cells.append((e, h * m))
    # cells with cells
    if len(fh) and len(gh):
        if op in (ADD, SUB):
            e2, h2 = (ge, gh) if op == ADD else _affine_cells(ge, gh, -1.0,
                                                               0.0)
            cells.append(_convolve_cells(fe, fh, e2, h2, resolution))
        else:
            xs, wx = _quantile_points(fe, fh, resolution)
            ys, wy = _quantile_points(ge, gh, resolution)
            hx, hm, he, hh = _histogram(func.outer(xs, ys).ravel(),
                                        np.full(len(xs) * len(ys), wx * wy),
                                        resolution)
            atoms_x.append(hx)
            atoms_m.append(hm)
            cells.append((he, hh))
    edges, heights = _sum_cells(cells)
    if len(heights) > resolution:
        grid_edges = _uniform_grid(edges[0], edges[-1], resolution)
        heights = _project(edges, heights, grid_edges)
        edges = grid_edges
    xs = np.concatenate(atoms_x)
    ms = np.concatenate(atoms_m)
    total = ms.sum() + _cumulative(edges, heights)[-1]
    xs, ms, edges, heights, moved = _clamp(
        xs, ms, edges, heights, out_range.lower, out_range.upper)
    clamped = moved / total if total > 0 else 0.0
    if clamped > 0:
        _logger().warning('%s: %.3g of the mass clamped onto the bounds of '
                          '%r', op, clamped, out_range)
    return _cardinal_result(out_range, xs, ms, edges, heights, clamped)


def arith_range(op, left, right, unit=''):
    """
    Interval arithmetic on cardinal ranges: the smallest range holding every
    ``x op y``.

    :raises: SingularityError when dividing by a range containing 0.
    """
    corners_x = (left.lower, left.upper)
    corners_y = (right.lower, right.upper)
    if op == DIV:
        if right.lower <= 0 <= right.upper:
            raise SingularityError(right.lower, right.upper)
    func = _NUMPY_OPS[op]
    values = [float(func(x, y)) for x in corners_x for y in corners_y]
    return Range.cardinal(min(values), max(values), unit=unit)


# -------------------
# Evidence fusion, thresholds and mixtures
# -------------------
def bayes_fuse(fs):
    """
    Combines conditionally independent densities of the same value with
    Bayes formula: pointwise product divided by its integral.

    An atom survives only where every other density has a strictly positive
    local density (or an atom at the same location).

    :raises: ContradictionError when the product has no mass.
    """
    fs = list(fs)
    if len(fs) < 2:
        raise ValueError('bayes_fuse needs at least two densities')
    range_ = fs[0].range
    for f in fs[1:]:
        if f.range != range_:
            raise RangeError('cannot fuse densities over %r and %r' % (
                range_, f.range), range_)
    if range_.is_discrete:
        probs = np.ones(len(range_.labels))
        for f in fs:
            probs = probs * f.probabilities
        total = probs.sum()
        if total <= 0:
            raise ContradictionError()
        return Density.from_arrays(range_, probs=probs / total)
    # continuous part: product of every cell part
    edges, heights = _EMPTY, _EMPTY
    if all(len(f.heights) for f in fs):
        low = max(f.edges[0] for f in fs)
        high = min(f.edges[-1] for f in fs)
        if high > low:
            edges = np.unique(np.concatenate(
                [[low, high]] + [f.edges[(f.edges > low) & (f.edges < high)]
                                 for f in fs]))
            mids = 0.5 * (edges[:-1] + edges[1:])
            heights = np.ones(len(mids))
            for f in fs:
                heights = heights * _heights_at(f.edges, f.heights, mids)
    # atoms: each factor contributes its atom mass or its local height
    locations = np.unique(np.concatenate([f.atom_locations for f in fs]))
    weights = np.ones(len(locations))
    for f in fs:
        index = np.searchsorted(f.atom_locations, locations)
        index = np.clip(index, 0, max(0, len(f.atom_locations) - 1))
        if len(f.atom_locations):
            hit = f.atom_locations[index] == locations
            masses = np.where(hit, f.atom_masses[index], 0.0)
        else:
            hit = np.zeros(len(locations), dtype=bool)
            masses = np.zeros(len(locations))
        local = _closed_heights_at(f.edges, f.heights, locations)
        weights = weights * np.where(hit, masses, local)
    total = weights.sum() + _cumulative(edges, heights)[-1]
    if total <= 0:
        raise ContradictionError()
    return _cardinal_result(range_, locations, weights, edges, heights)


def threshold_map(f, partition, out_range):
    """
    Maps a cardinal density onto a discrete range: the probability of each
    label is the probability that the value falls in the label's event set.

    :param partition: list of (label, EventSet); the event sets must be
        disjoint and cover ``f.range``.
    :raises: PartitionError on holes and overlaps, RangeError on unknown
        labels.
    """
    _require_cardinal(f)
    if not out_range.is_discrete:
        raise RangeError('threshold output must be categorical or ordinal',
                         out_range)
    check_partition(partition, f.range)
    probs = np.zeros(len(out_range.labels))
    for label, event_set in partition:
        probs[out_range.index(label)] += prob_in(f, event_set)
    return Density.from_arrays(out_range, probs=probs)


def partition_defects(partition, range_):
    """
    Lists the holes and overlaps of a partition of a cardinal range.

    :returns: list of messages, empty for a valid partition
    """
    items = []
    defects = []
    labels = [label for label, _ in partition]
    for label in set(labels):
        if labels.count(label) > 1:
            defects.append('label %s appears more than once' % label)
    for label, event_set in partition:
        if event_set.is_discrete:
            defects.append('label %s is not mapped to intervals' % label)
            continue
        items.extend(event_set.intervals)
    if defects:
        return defects
    items.sort(key=lambda i: (i.lower, not i.lower_closed))
    if not items:
        return ['empty partition']
    first, last = items[0], items[-1]
    if first.lower > range_.lower or (first.lower == range_.lower and
                                      not first.lower_closed):
        defects.append('values from %s are not covered' % format_number(
            range_.lower))
    if first.lower < range_.lower or last.upper > range_.upper:
        defects.append('partition leaves the range %r' % range_)
    for prev, nxt in zip(items, items[1:]):
        if nxt.lower > prev.upper or (
                nxt.lower == prev.upper and not prev.upper_closed and
                not nxt.lower_closed):
            defects.append('hole between %s and %s' % (prev, nxt))
        elif nxt.lower < prev.upper or (prev.upper_closed and
                                        nxt.lower_closed):
            defects.append('overlap between %s and %s' % (prev, nxt))
    if last.upper < range_.upper or (last.upper == range_.upper and
                                     not last.upper_closed):
        defects.append('values up to %s are not covered' % format_number(
            range_.upper))
    return defects


def check_partition(partition, range_):
    """
    :raises: PartitionError if ``partition`` is not a partition of
        ``range_``.
    """
    defects = partition_defects(partition, range_)
    if defects:
        raise PartitionError('; '.join(defects))


def mixture(ws, fs):
    """
    Convex combination of densities over the same range.

    :raises: DensityError for bad weights, RangeError for mismatched ranges.
    """
    ws = [float(w) for w in ws]
    fs = list(fs)
    if not fs or len(ws) != len(fs):
        raise DensityError('mixture needs one weight per density')
    if any(w < 0 for w in ws) or abs(sum(ws) - 1.0) > 1e-9:
        raise DensityError('mixture weights must be >= 0 and sum to 1')
    range_ = fs[0].range
    for f in fs[1:]:
        if f.range != range_:
            raise RangeError('cannot mix densities over %r and %r' % (
                range_, f.range), range_)
    if range_.is_discrete:
        probs = sum(w * f.probabilities for w, f in zip(ws, fs))
        return Density.from_arrays(range_, probs=probs / probs.sum())
    xs = np.concatenate([f.atom_locations for f in fs])
    ms = np.concatenate([w * f.atom_masses for w, f in zip(ws, fs)])
    edges, heights = _sum_cells([(f.edges, w * f.heights)
                                 for w, f in zip(ws, fs)])
    return _cardinal_result(range_, xs, ms, edges, heights)


def _bound_delta(mean, range_):
    """ Dirac density at ``mean`` pulled back onto the range bounds """
    x = min(max(mean, range_.lower), range_.upper)
    if x == mean:
        return make_delta(x, range_)
    _logger().warning('normal centred on %s clamped onto the bounds of %r',
                      format_number(mean), range_)
    return Density.from_arrays(range_, atom_x=np.array([x]),
                               atom_m=np.array([1.0]), clamped_mass=1.0,
                               tolerance=1e-9)


def normal_cells(mean, spread, range_, grid=None, width=4.0):
    """
    Piecewise-constant approximation of a normal density truncated to
    ``mean +/- width * spread`` and to the range. A spread that is
    negligible with respect to the range span gives a Dirac density.

    A normal lying entirely outside the range becomes a Dirac density on
    the nearest bound, with all of its mass reported as clamped.
    """
    if spread <= 1e-9 * range_.span:
        return _bound_delta(mean, range_)
    if grid is None:
        grid = GridPolicy()
    low = max(range_.lower, mean - width * spread)
    high = min(range_.upper, mean + width * spread)
    if not high > low:
        return _bound_delta(mean, range_)
    edges = _uniform_grid(low, high, grid.resolution)
    z = (edges - mean) / (spread * math.sqrt(2.0))
    cum = 0.5 * (1.0 + np.array([math.erf(v) for v in z]))
    masses = np.diff(cum)
    return _cardinal_result(range_, _EMPTY, _EMPTY, edges,
                            masses / np.diff(edges))
