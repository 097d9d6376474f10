"""
Two-level minimization with XOR/XNOR and majority implicants.

Implicants are strings over ``0 1 - ⊕ ⊖ ★`` where position i is variable i
(leaf i of a cut). ``⊕⊕`` over two positions means the variables differ, ``⊖⊖``
that they are equal and ``★★★`` that at least two of three are 1.
Minterm m gives variable i the value of bit i of m.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, List, Optional, Sequence, Tuple

from ..utils.logger import setup_logger

logger = setup_logger(__name__)

XOR_MARK = '⊕'
XNOR_MARK = '⊖'
MAJ_MARK = '★'
MARKS = (XOR_MARK, XNOR_MARK, MAJ_MARK)
MAX_ARITY = 4


def _matches(cells: str, minterm: int) -> bool:
    marked = {XOR_MARK: 0, XNOR_MARK: 0, MAJ_MARK: 0}
    for i, cell in enumerate(cells):
        bit = (minterm >> i) & 1
        if cell == '0' and bit:
            return False
        if cell == '1' and not bit:
            return False
        if cell in marked:
            marked[cell] += bit
    if XOR_MARK in cells and marked[XOR_MARK] % 2 != 1:
        return False
    if XNOR_MARK in cells and marked[XNOR_MARK] % 2 != 0:
        return False
    if MAJ_MARK in cells and marked[MAJ_MARK] < 2:
        return False
    return True


@lru_cache(maxsize=4096)
def expand(cells: str) -> int:
    """Minterm bitmask an implicant string covers."""
    mask = 0
    for minterm in range(1 << len(cells)):
        if _matches(cells, minterm):
            mask |= 1 << minterm
    return mask


@dataclass(frozen=True, order=True)
class Implicant:
    cells: str

    @property
    def arity(self) -> int:
        return len(self.cells)

    @property
    def mask(self) -> int:
        return expand(self.cells)

    @property
    def groups(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """(marker, positions) for each ⊕/⊖ pair and ★ triple."""
        return [
            (mark, tuple(i for i, c in enumerate(self.cells) if c == mark))
            for mark in MARKS if mark in self.cells
        ]

    @property
    def is_marked(self) -> bool:
        return any(mark in self.cells for mark in MARKS)

    @property
    def literal_count(self) -> int:
        return sum(1 for c in self.cells if c != '-')

    def __str__(self) -> str:
        return self.cells


@dataclass(frozen=True)
class Cover:
    """Sum of implicants; ``inverted`` covers describe the complement of the target."""

    implicants: Tuple[Implicant, ...]
    arity: int
    inverted: bool = False

    @property
    def mask(self) -> int:
        mask = 0
        for implicant in self.implicants:
            mask |= implicant.mask
        return mask

    @property
    def function(self) -> int:
        """Truth table this cover realizes, inversion included."""
        full = (1 << (1 << self.arity)) - 1
        return (~self.mask & full) if self.inverted else self.mask

    @property
    def majority_groups(self) -> int:
        return sum(1 for imp in self.implicants if MAJ_MARK in imp.cells)

    @property
    def is_constant(self) -> bool:
        full = (1 << (1 << self.arity)) - 1
        return self.mask in (0, full)

    def __len__(self) -> int:
        return len(self.implicants)

    def __str__(self) -> str:
        body = ' + '.join(str(imp) for imp in self.implicants) or '0'
        return f"!({body})" if self.inverted else body


def _cube_cells(value: int, dont_care: int, arity: int) -> str:
    return ''.join(
        '-' if (dont_care >> i) & 1 else str((value >> i) & 1)
        for i in range(arity)
    )


def qm_prime_implicants(minterms: Iterable[int], arity: int) -> List[Implicant]:
    """
    Quine-McCluskey prime implicants over ``{0, 1, -}``, sorted by cells.

    Example:
        >>> [str(p) for p in qm_prime_implicants({0, 1, 3}, 2)]
        ['-0', '1-']
    """
    if arity > MAX_ARITY:
        raise ValueError(f"arity {arity} exceeds {MAX_ARITY}")
    current = {(m, 0) for m in minterms}
    primes = set()
    while current:
        merged = set()
        used = set()
        cubes = sorted(current)
        for (v1, d1), (v2, d2) in combinations(cubes, 2):
            if d1 != d2:
                continue
            diff = v1 ^ v2
            if diff and diff & (diff - 1) == 0:
                merged.add((v1 & ~diff, d1 | diff))
                used.add((v1, d1))
                used.add((v2, d2))
        primes |= current - used
        current = merged
    return sorted(Implicant(_cube_cells(v, d, arity)) for v, d in primes)


def select_cover(primes: Sequence[Implicant], minterms: Iterable[int]) -> List[Implicant]:
    """
    Minimum-cardinality subset of ``primes`` covering ``minterms``.

    Essential primes are always part of it; ties go to fewer literals.
    """
    target = 0
    for m in minterms:
        target |= 1 << m
    if not target:
        return []

    primes = sorted(set(primes))
    masks = {p: p.mask & target for p in primes}

    essential: List[Implicant] = []
    for m in range(target.bit_length()):
        if not (target >> m) & 1:
            continue
        owners = [p for p in primes if (masks[p] >> m) & 1]
        if len(owners) == 1 and owners[0] not in essential:
            essential.append(owners[0])

    covered = 0
    for p in essential:
        covered |= masks[p]
    remaining = target & ~covered
    if not remaining:
        return sorted(essential)

    optional = [p for p in primes if p not in essential and masks[p] & remaining]
    for size in range(1, len(optional) + 1):
        best: Optional[Tuple[int, Tuple[Implicant, ...]]] = None
        for combo in combinations(optional, size):
            mask = 0
            for p in combo:
                mask |= masks[p]
            if mask & remaining != remaining:
                continue
            key = (sum(p.literal_count for p in combo), combo)
            if best is None or key < best:
                best = key
        if best is not None:
            return sorted(essential + list(best[1]))
    raise ValueError("primes do not cover the requested minterms")


def _require_unmarked(*implicants: Implicant) -> None:
    for implicant in implicants:
        if implicant.is_marked:
            raise ValueError(f"implicant {implicant} already carries a fusion marker")
    if len({imp.arity for imp in implicants}) != 1:
        raise ValueError("implicants of different arity cannot be fused")


def fuse_xor_xnor(s1: Implicant, s2: Implicant) -> Optional[Implicant]:
    """
    Merge two product terms that differ in exactly two complementary positions.

    One (0,1) column and one (1,0) column give ⊕; two columns of the same
    orientation give ⊖. All other columns must be identical.

    Raises:
        ValueError: If an input is already marked or arities differ
    """
    _require_unmarked(s1, s2)
    diffs = [(i, a, b) for i, (a, b) in enumerate(zip(s1.cells, s2.cells)) if a != b]
    if len(diffs) != 2 or any({a, b} != {'0', '1'} for _, a, b in diffs):
        return None
    (i, a1, _), (j, a2, _) = diffs
    mark = XOR_MARK if a1 != a2 else XNOR_MARK
    cells = list(s1.cells)
    cells[i] = cells[j] = mark
    return Implicant(''.join(cells))


_MAJ_COLUMNS = {('1', '1', '-'), ('1', '-', '1'), ('-', '1', '1')}


def fuse_maj(s1: Implicant, s2: Implicant, s3: Implicant) -> Optional[Implicant]:
    """
    Merge ``xy·R + xz·R + yz·R`` into ``MAJ(x, y, z)·R``.

    The columns (1,1,-), (1,-,1) and (-,1,1) must each occur exactly once and
    every other column must be identical in all three terms.

    Raises:
        ValueError: If an input is already marked or arities differ
    """
    _require_unmarked(s1, s2, s3)
    seen = []
    cells = []
    for column in zip(s1.cells, s2.cells, s3.cells):
        if column in _MAJ_COLUMNS:
            seen.append(column)
            cells.append(MAJ_MARK)
        elif column[0] == column[1] == column[2]:
            cells.append(column[0])
        else:
            return None
    if sorted(seen) != sorted(_MAJ_COLUMNS):
        return None
    return Implicant(''.join(cells))


def fuse_cover(
    implicants: Sequence[Implicant],
    use_maj: bool = True,
    use_xor: bool = True,
) -> List[Implicant]:
    """
    Apply majority then XOR/XNOR fusions until nothing merges.

    A term consumed by one fusion is not available to another.
    """
    terms = list(implicants)
    changed = True
    while changed:
        changed = False
        if use_maj:
            free = [i for i, t in enumerate(terms) if not t.is_marked]
            for i, j, k in combinations(free, 3):
                fused = fuse_maj(terms[i], terms[j], terms[k])
                if fused is not None:
                    terms = [t for n, t in enumerate(terms) if n not in (i, j, k)] + [fused]
                    changed = True
                    break
            if changed:
                continue
        if use_xor:
            free = [i for i, t in enumerate(terms) if not t.is_marked]
            for i, j in combinations(free, 2):
                fused = fuse_xor_xnor(terms[i], terms[j])
                if fused is not None:
                    terms = [t for n, t in enumerate(terms) if n not in (i, j)] + [fused]
                    changed = True
                    break
    return terms


def _minterms(mask: int) -> List[int]:
    return [m for m in range(mask.bit_length()) if (mask >> m) & 1]


def majority_implicants(on_mask: int, arity: int) -> List[Implicant]:
    """Every ★-triple implicant whose cover lies inside the on-set."""
    found = []
    for triple in combinations(range(arity), 3):
        others = [i for i in range(arity) if i not in triple]
        for fill in product('01-', repeat=len(others)):
            cells = [MAJ_MARK] * arity
            for position, value in zip(others, fill):
                cells[position] = value
            implicant = Implicant(''.join(cells))
            if implicant.mask & ~on_mask == 0:
                found.append(implicant)
    return found


def _seeded_covers(on_mask: int, arity: int, use_xor: bool) -> List[List[Implicant]]:
    """Covers built from up to two majority implicants plus a prime cover of the rest."""
    seeds = majority_implicants(on_mask, arity)
    primes = qm_prime_implicants(_minterms(on_mask), arity)
    covers = []
    for size in (1, 2):
        for combo in combinations(seeds, size):
            covered = 0
            for implicant in combo:
                covered |= implicant.mask
            rest = select_cover(primes, _minterms(on_mask & ~covered))
            rest = fuse_cover(rest, use_maj=False, use_xor=use_xor)
            covers.append(list(combo) + rest)
    return covers


def _rank(cover: Cover) -> Tuple[int, int, int, Tuple[str, ...]]:
    return (
        len(cover),
        -cover.majority_groups,
        sum(imp.literal_count for imp in cover.implicants),
        tuple(sorted(imp.cells for imp in cover.implicants)),
    )


@lru_cache(maxsize=None)
def cover_alternatives(
    truth: int,
    arity: int,
    use_maj: bool = True,
    use_xor: bool = True,
    complement: bool = False,
) -> Tuple[Cover, ...]:
    """
    Candidate covers of a truth table, best first.

    Includes the fused textbook cover, the unfused textbook cover and, with
    ``use_maj``, covers seeded by majority implicants. With ``complement`` the
    same is done for the off-set, marked ``inverted``.
    """
    if arity > MAX_ARITY:
        raise ValueError(f"arity {arity} exceeds {MAX_ARITY}")
    full = (1 << (1 << arity)) - 1
    targets = [(truth & full, False)]
    if complement:
        targets.append((~truth & full, True))

    found = {}
    for on_mask, inverted in targets:
        primes = qm_prime_implicants(_minterms(on_mask), arity)
        selected = select_cover(primes, _minterms(on_mask))
        options = [selected, fuse_cover(selected, use_maj, use_xor)]
        if use_maj and arity >= 3:
            options.extend(_seeded_covers(on_mask, arity, use_xor))
        for implicants in options:
            cover = Cover(tuple(sorted(implicants)), arity, inverted)
            found[cover] = cover

    return tuple(sorted(found.values(), key=lambda c: (c.inverted, _rank(c))))


def minimize(truth: int, arity: int, use_maj: bool = True, use_xor: bool = True) -> Cover:
    """
    Smallest cover of a truth table: fewest implicants, then most majority groups.

    Example:
        >>> str(minimize(0b11111001, 3))
        '00- + ★★★'
    """
    return cover_alternatives(truth, arity, use_maj, use_xor)[0]
