"""Linear codes over GF(p) and their weight enumeration.

A LinearCode stores a reduced-row-echelon basis.  Codeword enumeration over
GF(2) walks the reflected-binary Gray sequence over the basis rows, so lists
of codewords come out in a fixed order and each step is one XOR.  For p > 2 a
mixed-radix odometer plays the same role.  Full enumeration is capped at
2^28 codewords by default; the cap can be overridden per call or through the
EMBEDRANK_CAP environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from math import inf

import numpy as np

from .designs import IncidenceStructure
from .errors import (
    BadDimension,
    CapExceeded,
    NotACodeword,
    NotBent,
    WrongParameters,
)
from .linalg import MatGFp, mat_rref, support_from_bitmask

DEFAULT_CAP = 1 << 28


def _cap(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("EMBEDRANK_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass
class LinearCode:
    """A code given by an RREF basis (bit-rows when p = 2)."""

    length: int
    p: int
    basis_bits: list[int] | None = None
    basis_arr: np.ndarray | None = None
    pivots: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        if self.p == 2:
            return len(self.basis_bits)
        return int(self.basis_arr.shape[0])

    @property
    def size(self) -> int:
        return self.p**self.dim

    def contains(self, word) -> bool:
        if self.p == 2:
            r = int(word)
            for row, piv in zip(self.basis_bits, self.pivots):
                if (r >> piv) & 1:
                    r ^= row
            return r == 0
        r = np.asarray(word, dtype=np.int64) % self.p
        for i, piv in enumerate(self.pivots):
            c = int(r[piv])
            if c:
                r = (r - c * self.basis_arr[i].astype(np.int64)) % self.p
        return not r.any()


def code_from_rows(m: MatGFp) -> LinearCode:
    rref, pivots = mat_rref(m)
    if m.p == 2:
        return LinearCode(length=m.ncols, p=2, basis_bits=list(rref.bits), pivots=tuple(pivots))
    return LinearCode(length=m.ncols, p=m.p, basis_arr=rref.arr.copy(), pivots=tuple(pivots))


def code_from_cols(m: MatGFp) -> LinearCode:
    return code_from_rows(m.transpose())


def code_from_bitrows(rows, length: int) -> LinearCode:
    return code_from_rows(MatGFp.from_bitrows(list(rows), length))


def iter_codewords(code: LinearCode, cap: int | None = None):
    """Yield every codeword once, zero first, in the fixed enumeration order.

    GF(2) words are ints (bit j = coordinate j); other fields yield numpy
    vectors that must not be mutated by the consumer.
    """
    if code.size > _cap(cap):
        raise CapExceeded(f"{code.size} codewords exceed the cap {_cap(cap)}")
    if code.p == 2:
        basis = code.basis_bits
        w = 0
        yield 0
        for i in range(1, 1 << len(basis)):
            w ^= basis[(i & -i).bit_length() - 1]
            yield w
    else:
        k = code.dim
        vec = np.zeros(code.length, dtype=np.int64)
        yield vec
        if k == 0:
            return
        digits = [0] * k
        basis = code.basis_arr.astype(np.int64)
        total = code.p**k
        for _ in range(total - 1):
            i = 0
            while digits[i] == code.p - 1:
                # roll a maxed digit back to 0: subtract (p-1) copies = add one copy
                digits[i] = 0
                vec = (vec + basis[i]) % code.p
                i += 1
            digits[i] += 1
            vec = (vec + basis[i]) % code.p
            yield vec


@dataclass
class WeightDistribution:
    length: int
    p: int
    dim: int
    counts: dict[int, int]

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def min_nonzero(self) -> int:
        return min(w for w in self.counts if w > 0)

    def as_csv(self) -> str:
        lines = ["weight,count"]
        for w in sorted(self.counts):
            lines.append(f"{w},{self.counts[w]}")
        return "\n".join(lines) + "\n"


def _gray_word_at(basis: list[int], start: int) -> int:
    g = start ^ (start >> 1)
    w = 0
    i = 0
    while g:
        if g & 1:
            w ^= basis[i]
        g >>= 1
        i += 1
    return w


def _wdist_range(basis: list[int], start: int, stop: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    w = _gray_word_at(basis, start)
    counts[w.bit_count()] = 1
    for i in range(start + 1, stop):
        w ^= basis[(i & -i).bit_length() - 1]
        c = w.bit_count()
        counts[c] = counts.get(c, 0) + 1
    return counts


def _wdist_worker(args):
    basis, start, stop = args
    return _wdist_range(basis, start, stop)


def weight_distribution(code: LinearCode, cap: int | None = None, workers: int = 1) -> WeightDistribution:
    """Exact weight distribution by full enumeration.

    With workers > 1 the GF(2) Gray walk is split into equal index ranges and
    the per-range histograms are merged; the result is identical to the
    single-worker walk.
    """
    if code.size > _cap(cap):
        raise CapExceeded(f"{code.size} codewords exceed the cap {_cap(cap)}")
    if code.p == 2 and workers > 1 and code.dim > 12:
        total = 1 << code.dim
        bounds = [total * i // workers for i in range(workers + 1)]
        jobs = [(code.basis_bits, bounds[i], bounds[i + 1]) for i in range(workers) if bounds[i] < bounds[i + 1]]
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_wdist_worker, jobs)
        counts: dict[int, int] = {}
        for part in parts:
            for w, c in part.items():
                counts[w] = counts.get(w, 0) + c
    elif code.p == 2:
        counts = _wdist_range(code.basis_bits, 0, 1 << code.dim)
    else:
        counts = {}
        for vec in iter_codewords(code, cap=cap):
            w = int(np.count_nonzero(vec))
            counts[w] = counts.get(w, 0) + 1
    return WeightDistribution(length=code.length, p=code.p, dim=code.dim, counts=dict(sorted(counts.items())))


def min_weight(code: LinearCode, cap: int | None = None) -> int:
    """Smallest nonzero codeword weight (full enumeration)."""
    if code.dim == 0:
        raise WrongParameters("the zero code has no nonzero codeword")
    best = code.length + 1
    if code.p == 2:
        first = True
        for w in iter_codewords(code, cap=cap):
            if first:
                first = False
                continue
            c = w.bit_count()
            if c < best:
                best = c
    else:
        first = True
        for vec in iter_codewords(code, cap=cap):
            if first:
                first = False
                continue
            c = int(np.count_nonzero(vec))
            if c < best:
                best = c
    return best


def _wwords_range(basis: list[int], start: int, stop: int, w: int) -> list[int]:
    out = []
    word = _gray_word_at(basis, start)
    if word.bit_count() == w:
        out.append(word)
    for i in range(start + 1, stop):
        word ^= basis[(i & -i).bit_length() - 1]
        if word.bit_count() == w:
            out.append(word)
    return out


def _wwords_worker(args):
    return _wwords_range(*args)


def codewords_of_weight(code: LinearCode, w: int, cap: int | None = None, workers: int = 1) -> list:
    """All codewords of the given weight, in enumeration order.

    Workers split the Gray walk into index ranges; concatenating the ranges in
    order reproduces the single-worker list exactly.
    """
    out = []
    if code.p == 2 and workers > 1 and code.dim > 12:
        if code.size > _cap(cap):
            raise CapExceeded(f"{code.size} codewords exceed the cap {_cap(cap)}")
        total = 1 << code.dim
        bounds = [total * i // workers for i in range(workers + 1)]
        jobs = [
            (code.basis_bits, bounds[i], bounds[i + 1], w)
            for i in range(workers)
            if bounds[i] < bounds[i + 1]
        ]
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(workers) as pool:
            for part in pool.map(_wwords_worker, jobs):
                out.extend(part)
    elif code.p == 2:
        for word in iter_codewords(code, cap=cap):
            if word.bit_count() == w:
                out.append(word)
    else:
        for vec in iter_codewords(code, cap=cap):
            if int(np.count_nonzero(vec)) == w:
                out.append(vec.copy())
    return out[:1] if w == 0 else out


def codeword_to_hex(word: int, length: int) -> str:
    """Pack a GF(2) word into hex digits, coordinate 0 first.

    The length-n bit string (coordinate 0 leftmost) is right-padded with
    zeros to a multiple of 4 and each group of 4 becomes one hex digit.
    """
    bits = "".join("1" if (word >> i) & 1 else "0" for i in range(length))
    bits += "0" * (-length % 4)
    return format(int(bits, 2), f"0{len(bits) // 4}x") if bits else ""


def codeword_from_hex(text: str, length: int) -> int:
    """Inverse of codeword_to_hex for a word of the given length."""
    text = text.strip()
    value = int(text, 16) if text else 0
    nbits = 4 * len(text)
    if nbits < length:
        raise BadDimension(f"{len(text)} hex digits cannot hold {length} coordinates")
    word = 0
    for i in range(length):
        if (value >> (nbits - 1 - i)) & 1:
            word |= 1 << i
    if value & ((1 << (nbits - length)) - 1):
        raise BadDimension("nonzero padding bits beyond the stated length")
    return word


def residual_code(code: LinearCode, word) -> LinearCode:
    """Puncture the code on the support of one of its codewords."""
    if not code.contains(word):
        raise NotACodeword("the vector is not in the code")
    if code.p == 2:
        word = int(word)
        keep = [j for j in range(code.length) if not (word >> j) & 1]
        pos = {j: i for i, j in enumerate(keep)}
        rows = []
        for row in code.basis_bits:
            r = 0
            m = row
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if j in pos:
                    r |= 1 << pos[j]
                m ^= low
            rows.append(r)
        return code_from_rows(MatGFp(len(rows), len(keep), 2, bits=rows))
    vec = np.asarray(word, dtype=np.int64) % code.p
    keep = [j for j in range(code.length) if not vec[j]]
    arr = code.basis_arr[:, keep]
    return code_from_rows(MatGFp(arr.shape[0], len(keep), code.p, arr=arr.copy()))


@dataclass(frozen=True)
class DimensionDrop:
    """Observed vs guaranteed dimension loss when puncturing on a codeword."""

    guaranteed: bool
    drop: int
    dim: int
    residual_dim: int


def hill_newton_holds(code: LinearCode, word, cap: int | None = None) -> DimensionDrop:
    """Check the minimum-weight dimension-drop criterion on one codeword.

    When wt(word) equals the minimum weight d, the strict inequality
    d < p*d/(p-1) holds automatically and the punctured code loses exactly one
    dimension.  The actual drop is computed alongside for comparison.
    """
    res = residual_code(code, word)
    if code.p == 2:
        wt = int(word).bit_count()
    else:
        wt = int(np.count_nonzero(np.asarray(word) % code.p))
    guaranteed = wt == min_weight(code, cap=cap)
    return DimensionDrop(
        guaranteed=guaranteed,
        drop=code.dim - res.dim,
        dim=code.dim,
        residual_dim=res.dim,
    )


def rudolph_bound(r: int, lam: int) -> int:
    """floor((r + lambda - 1) / (2 lambda)), the majority-logic error bound."""
    if r < 1 or lam < 1:
        raise WrongParameters("need r >= 1 and lambda >= 1")
    return (r + lam - 1) // (2 * lam)


def johnson_restricted(n: int, d: int, w: int):
    """Upper bound on binary constant-weight-w codes with minimum distance d.

    Constant-weight codes have even pairwise distances, so odd d is rounded up.
    Returns the bound n*delta / (w^2 - w*n + n*delta) when the denominator is
    positive, else math.inf (the bound gives no information there).
    """
    if not 0 < w <= n or d < 1:
        raise WrongParameters("need 0 < w <= n and d >= 1")
    delta = (d + 1) // 2
    den = w * w - w * n + n * delta
    if den <= 0:
        return inf
    return (n * delta) // den


def rm_code(r: int, m: int) -> LinearCode:
    """The binary Reed-Muller code RM(r, m) of length 2^m.

    Generator rows are monomial evaluations; coordinate j is the point whose
    i-th variable is bit i of j.  Monomials ordered by degree, then by
    variable subset.
    """
    if not 0 <= r <= m:
        raise WrongParameters("need 0 <= r <= m")
    n = 1 << m
    rows = []
    for deg in range(r + 1):
        for subset in combinations(range(m), deg):
            mask = 0
            for i in subset:
                mask |= 1 << i
            row = 0
            for point in range(n):
                if point & mask == mask:
                    row |= 1 << point
            rows.append(row)
    return code_from_bitrows(rows, n)


def punctured_rm_code(r: int, m: int, coord: int = 0) -> LinearCode:
    """RM(r, m) with one coordinate deleted."""
    base = rm_code(r, m)
    n = base.length
    if not 0 <= coord < n:
        raise BadDimension(f"coordinate {coord} outside 0..{n - 1}")
    rows = []
    low_mask = (1 << coord) - 1
    for row in base.basis_bits:
        rows.append((row & low_mask) | ((row >> (coord + 1)) << coord))
    return code_from_bitrows(rows, n - 1)


def walsh_spectrum(truth_table) -> list[int]:
    """Walsh-Hadamard transform of (-1)^f for a Boolean truth table."""
    n = len(truth_table)
    if n & (n - 1):
        raise WrongParameters("truth table length must be a power of two")
    vals = [1 - 2 * int(x) for x in truth_table]
    h = 1
    while h < n:
        for i in range(0, n, h * 2):
            for j in range(i, i + h):
                x, y = vals[j], vals[j + h]
                vals[j], vals[j + h] = x + y, x - y
        h *= 2
    return vals


def is_bent(truth_table) -> bool:
    """Flat Walsh spectrum test; requires length 2^(2m)."""
    n = len(truth_table)
    if n & (n - 1) or n < 4:
        return False
    two_m = n.bit_length() - 1
    if two_m % 2:
        return False
    level = 1 << (two_m // 2)
    return all(abs(x) == level for x in walsh_spectrum(truth_table))


def bent_quadratic(m: int) -> tuple[int, ...]:
    """The inner-product bent function x1 x2 + x3 x4 + ... on 2m variables."""
    n = 1 << (2 * m)
    tt = []
    for point in range(n):
        acc = 0
        for i in range(m):
            acc ^= ((point >> (2 * i)) & 1) & ((point >> (2 * i + 1)) & 1)
        tt.append(acc)
    return tuple(tt)


def sdp_code(truth_table) -> LinearCode:
    """Span of a bent function's truth table together with RM(1, 2m).

    The resulting [2^(2m), 2m + 2] code has the symmetric-difference property;
    its minimum-weight supports carry a symmetric 2-design.
    """
    if not is_bent(truth_table):
        raise NotBent("truth table fails the flat-spectrum test")
    n = len(truth_table)
    two_m = n.bit_length() - 1
    bent_row = sum((int(x) & 1) << i for i, x in enumerate(truth_table))
    rows = [bent_row] + list(rm_code(1, two_m).basis_bits)
    code = code_from_bitrows(rows, n)
    if code.dim != two_m + 2:
        raise NotBent("bent row is dependent on the affine functions")
    return code


def min_weight_design(code: LinearCode, cap: int | None = None) -> IncidenceStructure:
    """Blocks are the supports of the minimum-weight codewords."""
    if code.p != 2:
        raise WrongParameters("support designs are implemented over GF(2)")
    d = min_weight(code, cap=cap)
    blocks = [
        tuple(support_from_bitmask(wd))
        for wd in codewords_of_weight(code, d, cap=cap)
    ]
    return IncidenceStructure(code.length, blocks, name=f"minwt({code.length},{code.dim})")
