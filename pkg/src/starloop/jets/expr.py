"""Immutable expression DAGs for matrix-valued smooth functions on the disk.

Nodes are built with ordinary operators (``+``, ``-``, ``*`` by a number,
``@`` for the order-preserving matrix product) and the helper constructors
below.  Jets are computed by an :class:`Evaluator`, which first works out
the derivative order each node must be expanded to (a derivative node
needs its child ``a + b`` orders deeper) and then evaluates every node
exactly once, vectorized over all requested points.
"""

import threading

import numpy as np

from ..errors import DimensionMismatch, DomainError, OrderExceeded
from . import jet as _jet
from ._tables import derivative_map, n_slots, slot
from .jet import COND_MAX, Jet2D

M_MAX = 10


class SmoothMap:
    """Base node.  Subclasses set ``children`` and implement ``_compute``."""

    __slots__ = ("children", "n", "_derivs", "__weakref__")
    kind = "node"

    def __init__(self, children, n):
        self.children = tuple(children)
        self.n = int(n)
        self._derivs = None

    # --- construction sugar -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, float, complex)) and other == 0:
            return self
        return add(self, _as_map(other, self.n))

    def __radd__(self, other):
        if isinstance(other, (int, float, complex)) and other == 0:
            return self
        return add(_as_map(other, self.n), self)

    def __neg__(self):
        return scale(-1.0, self)

    def __sub__(self, other):
        return add(self, scale(-1.0, _as_map(other, self.n)))

    def __rsub__(self, other):
        return add(_as_map(other, self.n), scale(-1.0, self))

    def __mul__(self, c):
        if isinstance(c, SmoothMap):
            return matmul(self, c)
        return scale(c, self)

    def __rmul__(self, c):
        return scale(c, self)

    def __truediv__(self, c):
        return scale(1.0 / c, self)

    def __matmul__(self, other):
        return matmul(self, _as_map(other, None))

    def __rmatmul__(self, other):
        return matmul(_as_map(other, None), self)

    def d(self, a=0, b=0):
        """Partial derivative d^a_x d^b_y, shared between callers."""
        if a == 0 and b == 0:
            return self
        return partial(self, a, b)

    # --- evaluation -----------------------------------------------------------
    @property
    def is_zero(self):
        return False

    def child_orders(self, order):
        return (order,) * len(self.children)

    def _compute(self, ev, order, kids):
        raise NotImplementedError

    def jet(self, points, order=0, **kw):
        return jet_eval(self, points, order, **kw)

    def values(self, points, **kw):
        """Pointwise values, shape (P, n, n)."""
        return Evaluator(points, **kw).data(self, 0)[0]

    def __repr__(self):
        return f"<{self.kind} n={self.n}>"


def _as_map(x, n):
    if isinstance(x, SmoothMap):
        return x
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0:
        if n is None:
            return Const(x.reshape(1, 1))
        return Const(x * np.eye(n))
    return Const(x)


class Const(SmoothMap):
    __slots__ = ("value", "_zero")
    kind = "const"

    def __init__(self, value):
        value = np.array(value, dtype=complex)
        if value.ndim == 0:
            value = value.reshape(1, 1)
        if value.ndim != 2 or value.shape[0] != value.shape[1]:
            raise DimensionMismatch("constant must be a square matrix")
        if not np.all(np.isfinite(value)):
            raise ValueError("constant has non-finite entries")
        value.setflags(write=False)
        super().__init__((), value.shape[0])
        self.value = value
        self._zero = not value.any()

    @property
    def is_zero(self):
        return self._zero

    def _compute(self, ev, order, kids):
        out = np.zeros((n_slots(order), ev.npoints, self.n, self.n), dtype=complex)
        out[0] = self.value
        return out


def zero(n):
    return Const(np.zeros((n, n)))


def identity(n):
    return Const(np.eye(n))


class _Coord(SmoothMap):
    __slots__ = ()
    axis = 0

    def __init__(self):
        super().__init__((), 1)

    def _compute(self, ev, order, kids):
        out = np.zeros((n_slots(order), ev.npoints, 1, 1), dtype=complex)
        out[0, :, 0, 0] = ev.points[:, self.axis]
        if order >= 1:
            out[slot(1, 0) if self.axis == 0 else slot(0, 1)] = 1.0
        return out


class CoordX(_Coord):
    __slots__ = ()
    kind = "x"
    axis = 0


class CoordY(_Coord):
    __slots__ = ()
    kind = "y"
    axis = 1


class Sum(SmoothMap):
    __slots__ = ()
    kind = "sum"

    def _compute(self, ev, order, kids):
        out = kids[0].copy()
        for k in kids[1:]:
            out += k
        return out


class ScalarScale(SmoothMap):
    __slots__ = ("c",)
    kind = "scale"

    def __init__(self, c, child):
        super().__init__((child,), child.n)
        self.c = complex(c)

    def _compute(self, ev, order, kids):
        return kids[0] * self.c


class MatProduct(SmoothMap):
    """Order-preserving pointwise product; a 1x1 factor broadcasts."""

    __slots__ = ()
    kind = "matmul"

    def _compute(self, ev, order, kids):
        return _jet.mul_data(kids[0], kids[1], order)


class MatInverse(SmoothMap):
    __slots__ = ()
    kind = "inv"

    def _compute(self, ev, order, kids):
        return _jet.inverse_data(kids[0], order, ev.cond_max)


class MatExp(SmoothMap):
    __slots__ = ()
    kind = "exp"

    def _compute(self, ev, order, kids):
        return _jet.exp_data(kids[0], order)


class ScalarCompose(SmoothMap):
    __slots__ = ("prim",)
    kind = "compose"

    def __init__(self, prim, child):
        if child.n != 1:
            raise DimensionMismatch("ScalarCompose needs a scalar-valued subexpression")
        super().__init__((child,), 1)
        self.prim = prim

    def _compute(self, ev, order, kids):
        taylor = self.prim.taylor(kids[0][0, :, 0, 0], order)
        return _jet.compose_data(taylor, kids[0], order)

    def __repr__(self):
        return f"<compose {self.prim.name}>"


class PartialDerivative(SmoothMap):
    __slots__ = ("a", "b")
    kind = "partial"

    def __init__(self, child, a, b):
        super().__init__((child,), child.n)
        self.a, self.b = int(a), int(b)

    def child_orders(self, order):
        return (order + self.a + self.b,)

    def _compute(self, ev, order, kids):
        src, w = derivative_map(order, self.a, self.b)
        return kids[0][src] * w[:, None, None, None]


class TimeSlice(SmoothMap):
    """The slice t of a :class:`~starloop.jets.loops.LoopFamily`."""

    __slots__ = ("family", "t")
    kind = "slice"

    def __init__(self, family, t):
        child = family.at(t)
        super().__init__((child,), child.n)
        self.family = family
        self.t = float(t)

    def _compute(self, ev, order, kids):
        return kids[0]


# --- smart constructors (fold structural zeros, nothing more) ---------------

def add(*terms):
    ns = {t.n for t in terms}
    if len(ns) != 1:
        raise DimensionMismatch(f"cannot add maps of sizes {sorted(ns)}")
    n = ns.pop()
    flat = []
    for t in terms:
        if t.is_zero:
            continue
        flat.extend(t.children if isinstance(t, Sum) else (t,))
    if not flat:
        return zero(n)
    if len(flat) == 1:
        return flat[0]
    return Sum(flat, n)


def add_or_zero(terms, n):
    terms = list(terms)
    return add(*terms) if terms else zero(n)


def scale(c, f):
    if c == 0 or f.is_zero:
        return zero(f.n)
    if c == 1:
        return f
    if isinstance(f, Const):
        return Const(c * f.value)
    if isinstance(f, ScalarScale):
        return scale(c * f.c, f.children[0])
    return ScalarScale(c, f)


def matmul(a, b):
    if a.n != b.n and 1 not in (a.n, b.n):
        raise DimensionMismatch(f"cannot multiply maps of sizes {a.n} and {b.n}")
    n = max(a.n, b.n)
    if a.is_zero or b.is_zero:
        return zero(n)
    if isinstance(a, Const) and isinstance(b, Const):
        if a.n == b.n:
            return Const(a.value @ b.value)
        return Const(a.value * b.value)
    return MatProduct((a, b), n)


def partial(f, a, b):
    if f.is_zero or isinstance(f, Const):
        return zero(f.n)
    if isinstance(f, _Coord):
        unit = (1, 0) if f.axis == 0 else (0, 1)
        return Const(np.ones((1, 1))) if (a, b) == unit else zero(1)
    if isinstance(f, PartialDerivative):
        return partial(f.children[0], f.a + a, f.b + b)
    if isinstance(f, ScalarScale):
        return scale(f.c, partial(f.children[0], a, b))
    cache = f._derivs
    if cache is None:
        cache = f._derivs = {}
    node = cache.get((a, b))
    if node is None:
        node = cache.setdefault((a, b), PartialDerivative(f, a, b))
    return node


def inverse(f):
    if isinstance(f, Const):
        return Const(np.linalg.inv(f.value))
    return MatInverse((f,), f.n)


def expm(f):
    return MatExp((f,), f.n)


def compose(prim, f):
    return ScalarCompose(prim, f)


X = CoordX()
Y = CoordY()
U = X * X + Y * Y


def radius_squared():
    return U


# --- evaluation --------------------------------------------------------------

def _as_points(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (P, 2)")
    return pts


class Evaluator:
    """Per-context jet cache over a fixed set of points.

    Results of one :meth:`data` call are kept for the requested roots only;
    intermediate nodes are released as soon as their last consumer has been
    evaluated.  ``retain`` drops everything except the given nodes, which
    lets iterative algorithms (series summation) keep just their frontier.
    An evaluator is confined to one thread; DAGs themselves are shareable.
    """

    def __init__(self, points, cond_max=COND_MAX, check_disk=True):
        self.points = _as_points(points)
        if check_disk and np.any(np.hypot(self.points[:, 0], self.points[:, 1]) > 1.0 + 1e-12):
            raise DomainError("evaluation point outside the closed unit disk")
        self.npoints = len(self.points)
        self.cond_max = cond_max
        self._cache = {}
        self._owner = threading.get_ident()

    def clear(self):
        self._cache.clear()

    def retain(self, nodes):
        keep = {id(n) for n in nodes}
        self._cache = {k: v for k, v in self._cache.items() if k in keep}

    def data(self, node, order):
        return self.data_many([node], [order])[0]

    def data_many(self, roots, orders):
        if threading.get_ident() != self._owner:
            raise RuntimeError("Evaluator used from a thread other than its creator")
        roots = list(roots)
        if isinstance(orders, int):
            orders = [orders] * len(roots)
        while True:
            post = self._postorder(roots)
            need = {}
            for r, o in zip(roots, orders):
                need[id(r)] = max(need.get(id(r), -1), o)
            todo = []
            stale = []
            for node in reversed(post):
                k = id(node)
                if k not in need:
                    continue
                hit = self._cache.get(k)
                if hit is not None:
                    if hit[1] >= need[k]:
                        continue
                    stale.append(k)
                    continue
                todo.append(node)
                for c, co in zip(node.children, node.child_orders(need[k])):
                    need[id(c)] = max(need.get(id(c), -1), co)
            if not stale:
                break
            for k in stale:
                del self._cache[k]
        todo.reverse()
        rootset = {id(r) for r in roots}
        users = {}
        for node in todo:
            for c in node.children:
                users[id(c)] = users.get(id(c), 0) + 1
        created = set()
        for node in todo:
            k = id(node)
            kids = []
            for c, co in zip(node.children, node.child_orders(need[k])):
                kids.append(self._cache[id(c)][2][: n_slots(co)])
            self._cache[k] = (node, need[k], node._compute(self, need[k], kids))
            created.add(k)
            for c in node.children:
                ck = id(c)
                users[ck] -= 1
                if users[ck] == 0 and ck in created and ck not in rootset:
                    del self._cache[ck]
        return [self._cache[id(r)][2][: n_slots(o)] for r, o in zip(roots, orders)]

    def _postorder(self, roots):
        seen = set()
        out = []
        stack = [(r, False) for r in reversed(roots)]
        while stack:
            node, done = stack.pop()
            k = id(node)
            if done:
                out.append(node)
                continue
            if k in seen:
                continue
            seen.add(k)
            stack.append((node, True))
            if k in self._cache:
                continue
            for c in reversed(node.children):
                if id(c) not in seen:
                    stack.append((c, False))
        return out


def jet_eval(expr, p, order, m_max=M_MAX, cond_max=COND_MAX):
    """Exact order-``order`` Taylor data of ``expr`` at the point(s) ``p``."""
    if order > m_max:
        raise OrderExceeded(f"requested jet order {order} exceeds M_max={m_max}")
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    ev = Evaluator(p, cond_max=cond_max)
    return Jet2D(ev.points, order, ev.data(expr, order))
