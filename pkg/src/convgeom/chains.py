"""Maximal chains of closed sets and the compatible orders they induce."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ClosureSystem, GroundSet, Subset, TotalOrder, mask_key
from .errors import ConsistencyError, LimitExceeded, NotZeroClosed, TooLarge
from .geometry import ConvexGeometry

#: chain and order enumeration refuse larger ground sets
MAX_CHAIN_N = 10


@dataclass(frozen=True)
class Chain:
    """Strictly increasing sequence of subsets running from the empty set to X."""

    ground: GroundSet
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        masks = tuple(self.masks)
        if not masks or masks[0] != 0 or masks[-1] != self.ground.full:
            raise ValueError("a chain must start at the empty set and end at the full set")
        for a, b in zip(masks, masks[1:]):
            if a == b or a & ~b:
                raise ValueError(f"chain not strictly increasing at {Subset(self.ground, a)}")
        object.__setattr__(self, "masks", masks)

    @classmethod
    def of(cls, sets: list[Subset]) -> Chain:
        ground = sets[0].ground
        for s in sets:
            ground.check_same(s.ground)
        return cls(ground, tuple(s.bits for s in sets))

    @property
    def sets(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.masks)

    @property
    def length(self) -> int:
        """Number of covering steps."""
        return len(self.masks) - 1

    @property
    def key(self) -> tuple:
        return tuple(mask_key(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __str__(self) -> str:
        return " < ".join(str(s) for s in self.sets)


@dataclass(frozen=True)
class ChainElementMap:
    """The map sending each point to the least chain member containing it."""

    chain: Chain
    assignment: tuple[int, ...]

    def __getitem__(self, index: int) -> Subset:
        return Subset(self.chain.ground, self.assignment[index])

    def as_dict(self) -> dict[str, Subset]:
        labels = self.chain.ground.labels
        return {labels[i]: self[i] for i in range(len(labels))}


def _guard(n: int, max_n: int) -> None:
    if n > max_n:
        raise TooLarge(f"exhaustive enumeration over {n} elements refused (limit {max_n})")


def maximal_chains(
    system: ClosureSystem, limit: int | None = None, max_n: int = MAX_CHAIN_N
) -> list[Chain]:
    """All maximal chains from the empty set to X, depth first over upper covers.

    Branching follows canonical order, so the output is sorted canonically.
    Raises :class:`LimitExceeded` once more than ``limit`` chains are found.
    """
    if not system.zero_closed:
        raise NotZeroClosed("maximal chains are taken from the empty set")
    _guard(system.n, max_n)
    ground = system.ground
    full = ground.full
    upper = system.upper_cover_map
    out: list[Chain] = []
    path = [0]

    def walk(a: int) -> None:
        if a == full:
            if limit is not None and len(out) >= limit:
                raise LimitExceeded(f"more than {limit} maximal chains")
            out.append(Chain(ground, tuple(path)))
            return
        for b in upper[a]:
            path.append(b)
            walk(b)
            path.pop()

    walk(0)
    return out


def is_maximal_chain(chain: Chain, system: ClosureSystem) -> bool:
    """Every member is closed and consecutive members form covers."""
    system.ground.check_same(chain.ground)
    if not all(system.is_closed_mask(m) for m in chain.masks):
        return False
    upper = system.upper_cover_map
    return all(b in upper[a] for a, b in zip(chain.masks, chain.masks[1:]))


def h_map(chain: Chain, geometry: ConvexGeometry) -> ChainElementMap:
    """Send each point to the intersection of chain members that contain it.

    The result is checked to be a bijection onto the members having a lower
    cover in the chain, with each image equal to its predecessor plus the
    point itself.
    """
    if not is_maximal_chain(chain, geometry.system):
        raise ValueError(f"not a maximal chain of the geometry: {chain}")
    ground = chain.ground
    masks = chain.masks
    full = ground.full
    assignment = []
    for x in range(ground.n):
        bit = 1 << x
        h = full
        for m in masks:
            if m & bit:
                h &= m
        assignment.append(h)
    starred = set(masks[1:])
    if len(set(assignment)) != ground.n or set(assignment) != starred:
        raise ConsistencyError(f"element map is not a bijection onto the chain: {chain}")
    previous = dict(zip(masks[1:], masks))
    for x, h in enumerate(assignment):
        if h != previous[h] | 1 << x:
            raise ConsistencyError(
                f"image of {ground.labels[x]} is not its lower cover plus the point: {Subset(ground, h)}"
            )
    return ChainElementMap(chain, tuple(assignment))


def order_from_chain(chain: Chain, geometry: ConvexGeometry) -> TotalOrder:
    """Total order ranking ``x`` before ``y`` iff ``h(x) ⊂ h(y)``."""
    hm = h_map(chain, geometry)
    ground = chain.ground
    perm = sorted(range(ground.n), key=lambda x: hm.assignment[x].bit_count())
    for x, y in zip(perm, perm[1:]):
        hx, hy = hm.assignment[x], hm.assignment[y]
        if hx == hy or hx & ~hy:
            raise ConsistencyError(f"points {ground.labels[x]} and {ground.labels[y]} are incomparable")
    order = TotalOrder(ground, tuple(perm))
    if order.prefix_masks() != chain.masks:
        raise ConsistencyError(f"ideal chain of {order} does not reproduce {chain}")
    return order


def chain_of_order(order: TotalOrder) -> Chain:
    return Chain(order.ground, order.prefix_masks())


def ideal_geometry(order: TotalOrder) -> ConvexGeometry:
    """Geometry whose closed sets are the down-sets (prefixes) of ``order``."""
    return ConvexGeometry(ClosureSystem.from_masks(order.ground, order.prefix_masks()))


def is_compatible(order: TotalOrder, system: ClosureSystem) -> bool:
    """Every prefix of ``order`` is closed."""
    system.ground.check_same(order.ground)
    return all(system.is_closed_mask(m) for m in order.prefix_masks())


def compatible_orders(
    geometry: ConvexGeometry | ClosureSystem, limit: int | None = None, max_n: int = MAX_CHAIN_N
) -> list[TotalOrder]:
    """All compatible orders, built by extending closed prefixes one point at a time.

    Output is in lexicographic order of the index permutations.
    """
    system = geometry.system if isinstance(geometry, ConvexGeometry) else geometry
    if not system.zero_closed:
        raise NotZeroClosed("compatible orders start from the empty set")
    _guard(system.n, max_n)
    ground = system.ground
    n = ground.n
    closed = system.family.mask_set
    out: list[TotalOrder] = []
    perm: list[int] = []

    def extend(prefix: int) -> None:
        if len(perm) == n:
            if limit is not None and len(out) >= limit:
                raise LimitExceeded(f"more than {limit} compatible orders")
            out.append(TotalOrder(ground, tuple(perm)))
            return
        for x in range(n):
            nxt = prefix | 1 << x
            if nxt != prefix and nxt in closed:
                perm.append(x)
                extend(nxt)
                perm.pop()

    extend(0)
    return out
