"""Joint-Gaussian covariance algebra for log-det information quantities.

Covariances are stored over named components, each of which may be a
vector (dimension >= 1).  Conditioning uses Schur complements with a
pseudo-inverse, so zero-variance components (degenerate auxiliaries such
as a switched-off cloud center) are legal and behave like absent
variables.  Mutual informations are computed from log-pseudo-determinants
with a shared eigenvalue threshold, which keeps ranks consistent across
the three blocks of I(A;B|C).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .atoms import CONST, GAMMA, I, AtomSpec, parse_atom

__all__ = [
    "JointCovariance",
    "CranNetwork",
    "schur_conditional",
    "gauss_mi",
    "gauss_total_correlation",
    "capacity_logdet",
    "atom_valuation",
]

_EIG_REL_TOL = 1e-10


def _sym(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def _pinv_psd(m: np.ndarray) -> np.ndarray:
    """Pseudo-inverse of a symmetric PSD matrix with relative threshold."""
    if m.size == 0:
        return m
    w, v = np.linalg.eigh(_sym(m))
    cut = _EIG_REL_TOL * max(w.max(initial=0.0), 0.0)
    inv = np.where(w > cut, 1.0 / np.where(w > cut, w, 1.0), 0.0)
    return (v * inv) @ v.T


def _logpdet2(m: np.ndarray, cut: float) -> tuple[float, int]:
    """Base-2 log pseudo-determinant and rank, dropping eigenvalues <= cut."""
    n = m.shape[0] if m.ndim == 2 else 0
    if n == 0:
        return 0.0, 0
    if n == 1:
        v = float(m[0, 0])
        return (math.log2(v), 1) if v > cut else (0.0, 0)
    if n == 2:
        # closed-form symmetric 2x2 eigenvalues
        a, d = float(m[0, 0]), float(m[1, 1])
        off = 0.5 * float(m[0, 1] + m[1, 0])
        h = 0.5 * (a + d)
        r = math.sqrt(max(0.0, (0.5 * (a - d)) ** 2 + off * off))
        total, rank = 0.0, 0
        for w in (h - r, h + r):
            if w > cut:
                total += math.log2(w)
                rank += 1
        return total, rank
    w = np.linalg.eigvalsh(_sym(m))
    kept = w[w > cut]
    if kept.size == 0:
        return 0.0, 0
    return float(np.log2(kept).sum()), int(kept.size)


@dataclass(frozen=True)
class JointCovariance:
    """Symmetric PSD matrix over named real-vector components."""

    components: tuple[tuple[str, int], ...]
    matrix: np.ndarray

    @staticmethod
    def make(components, matrix) -> "JointCovariance":
        components = tuple((str(n), int(d)) for n, d in components)
        names = [n for n, _ in components]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate component names in {names}")
        dim = sum(d for _, d in components)
        m = np.asarray(matrix, dtype=float).reshape(dim, dim)
        if np.max(np.abs(m - m.T), initial=0.0) > 1e-10 * max(1.0, np.abs(m).max(initial=1.0)):
            raise ValueError("covariance matrix is not symmetric")
        m = _sym(m)
        w = np.linalg.eigvalsh(m) if dim else np.array([])
        if dim and w.min() < -1e-9 * max(1.0, abs(w).max()):
            raise ValueError(f"covariance matrix is not PSD (min eigenvalue {w.min()})")
        m = m.copy()
        m.flags.writeable = False
        return JointCovariance(components, m)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.components)

    def dim_of(self, name: str) -> int:
        for n, d in self.components:
            if n == name:
                return d
        raise KeyError(f"unknown component {name!r}")

    def indices(self, names) -> np.ndarray:
        names = list(names)
        unknown = set(names) - set(self.names)
        if unknown:
            raise KeyError(f"unknown components {sorted(unknown)}")
        offsets = {}
        pos = 0
        for n, d in self.components:
            offsets[n] = (pos, d)
            pos += d
        idx: list[int] = []
        for n in names:
            start, d = offsets[n]
            idx.extend(range(start, start + d))
        return np.asarray(idx, dtype=int)

    def block(self, rows, cols=None) -> np.ndarray:
        r = self.indices(rows)
        c = r if cols is None else self.indices(cols)
        return self.matrix[np.ix_(r, c)]


def schur_conditional(cov: JointCovariance, s_names, t_names) -> JointCovariance:
    """Covariance of X(S) given X(T): Sigma_SS - Sigma_ST Sigma_TT^+ Sigma_TS."""
    s_names, t_names = list(s_names), list(t_names)
    if set(s_names) & set(t_names):
        raise ValueError("S and T must be disjoint")
    sub_components = [(n, cov.dim_of(n)) for n in s_names]
    ss = cov.block(s_names)
    if not t_names:
        return JointCovariance.make(sub_components, ss)
    st = cov.block(s_names, t_names)
    tt = cov.block(t_names)
    cond = _sym(ss - st @ _pinv_psd(tt) @ st.T)
    # clip tiny negative eigenvalues introduced by the subtraction
    w, v = np.linalg.eigh(cond)
    cond = (v * np.clip(w, 0.0, None)) @ v.T
    return JointCovariance.make(sub_components, cond)


def gauss_mi(cov: JointCovariance, a, b, cond=()) -> float:
    """I(A;B|C) in bits for jointly Gaussian components, clamped at zero.

    Computed as half the base-2 log of det Sigma_{A|C} det Sigma_{B|C} /
    det Sigma_{AB|C}, using pseudo-determinants with a common threshold so
    that zero-variance (degenerate) components cancel out.
    """
    a, b, cond = list(a), list(b), list(cond)
    if set(a) & set(b) or set(a) & set(cond) or set(b) & set(cond):
        raise ValueError("A, B, C must be pairwise disjoint")
    if not a or not b:
        raise ValueError("both sides of a mutual information must be nonempty")
    ia = cov.indices(a)
    ib = cov.indices(b)
    iab = np.concatenate([ia, ib])
    m = cov.matrix[np.ix_(iab, iab)]
    ic = cov.indices(cond)
    if ic.size:
        ct = cov.matrix[np.ix_(iab, ic)]
        cc = cov.matrix[np.ix_(ic, ic)]
        m = _sym(m - ct @ _pinv_psd(cc) @ ct.T)
    cut = _EIG_REL_TOL * max(np.linalg.eigvalsh(m).max(initial=0.0), 0.0) if m.size else 0.0
    na = len(ia)
    la, ra = _logpdet2(m[:na, :na], cut)
    lb, rb = _logpdet2(m[na:, na:], cut)
    lab, rab = _logpdet2(m, cut)
    if rab < ra + rb:
        # a linear functional of the A side coincides with one of the B side
        # almost surely, so the mutual information diverges
        return np.inf
    return max(0.0, 0.5 * (la + lb - lab))


def gauss_total_correlation(cov: JointCovariance, names) -> float:
    """Total correlation of scalar/vector components in bits: half the log
    ratio of the product of marginal determinants to the joint determinant."""
    names = sorted(set(names))
    if not names:
        raise ValueError("total correlation needs at least one component")
    if len(names) == 1:
        return 0.0
    m = cov.block(names)
    cut = _EIG_REL_TOL * max(np.linalg.eigvalsh(m).max(initial=0.0), 0.0) if m.size else 0.0
    joint = JointCovariance.make([(n, cov.dim_of(n)) for n in names], m)
    total, rank_sum = 0.0, 0
    for n in names:
        i = joint.indices([n])
        l, r = _logpdet2(m[np.ix_(i, i)], cut)
        total += l
        rank_sum += r
    ljoint, rjoint = _logpdet2(m, cut)
    if rjoint < rank_sum:
        return np.inf
    return max(0.0, 0.5 * (total - ljoint))


def atom_valuation(cov: JointCovariance, atoms, constants=None) -> dict[str, float]:
    """Evaluate mutual-information and total-correlation atoms on a joint
    Gaussian law.  Differential-entropy atoms are rejected (not bit-valued).

    Every atom reduces to sums of log-pseudo-determinants of principal
    subblocks, which are memoized per component subset; the eigenvalue
    threshold is shared across subsets so ranks stay consistent.  Rank
    shortfalls of the pseudo-Schur decomposition signal an almost-sure
    linear dependence, reported as an infinite value.
    """
    constants = dict(constants or {})
    cut = _EIG_REL_TOL * max(np.linalg.eigvalsh(cov.matrix).max(initial=0.0), 0.0) \
        if cov.matrix.size else 0.0
    offsets: dict[str, list[int]] = {}
    pos = 0
    for n, d in cov.components:
        offsets[n] = list(range(pos, pos + d))
        pos += d
    cache: dict[tuple[str, ...], tuple[float, int]] = {(): (0.0, 0)}

    def lpd(subset) -> tuple[float, int]:
        key = tuple(sorted(subset))
        if key not in cache:
            idx = [i for n in key for i in offsets[n]]
            cache[key] = _logpdet2(cov.matrix[np.ix_(idx, idx)], cut)
        return cache[key]

    out: dict[str, float] = {}
    for atom in atoms:
        spec = parse_atom(atom) if isinstance(atom, str) else atom
        if not isinstance(spec, AtomSpec):
            raise TypeError(f"bad atom spec {atom!r}")
        if spec.kind == CONST:
            if spec.const_name not in constants:
                raise KeyError(f"no value for constant atom {spec.const_name!r}")
            out[spec.name] = float(constants[spec.const_name])
        elif spec.kind == I:
            a, b = set(spec.groups[0]), set(spec.groups[1])
            c = set(spec.groups[2]) if len(spec.groups) == 3 else set()
            lac, rac = lpd(a | c)
            lbc, rbc = lpd(b | c)
            labc, rabc = lpd(a | b | c)
            lc, rc = lpd(c)
            if rac + rbc > rabc + rc:
                out[spec.name] = np.inf
            else:
                out[spec.name] = max(0.0, 0.5 * (lac + lbc - labc - lc))
        elif spec.kind == GAMMA:
            names = spec.groups[0]
            if len(names) < 2:
                out[spec.name] = 0.0
                continue
            lj, rj = lpd(names)
            total, rank_sum = 0.0, 0
            for n in names:
                l1, r1 = lpd((n,))
                total += l1
                rank_sum += r1
            out[spec.name] = np.inf if rj < rank_sum else max(0.0, 0.5 * (total - lj))
        else:
            raise ValueError(f"cannot evaluate atom kind {spec.kind!r} on a Gaussian law")
    return out


def capacity_logdet(g_sub: np.ndarray, k_sub: np.ndarray) -> float:
    """(1/2) log2 det(I + G K G^T) in bits; K is clipped to the PSD cone."""
    g = np.asarray(g_sub, dtype=float)
    if g.ndim != 2:
        raise ValueError("G must be a matrix")
    if g.size == 0:
        return 0.0
    k = np.asarray(k_sub, dtype=float)
    if k.shape != (g.shape[1], g.shape[1]):
        raise ValueError(f"K shape {k.shape} does not match G columns {g.shape[1]}")
    w, v = np.linalg.eigh(_sym(k))
    k = (v * np.clip(w, 0.0, None)) @ v.T
    m = np.eye(g.shape[0]) + g @ k @ g.T
    sign, logdet = np.linalg.slogdet(m)
    if sign <= 0:
        raise ValueError("I + G K G^T is numerically singular")
    return max(0.0, float(logdet / np.log(2.0) * 0.5))


@dataclass(frozen=True)
class CranNetwork:
    """Gaussian downlink C-RAN instance.

    N base stations with per-BS power P and unit-variance receiver noise;
    L users; G is the L x N channel matrix (row = user); C[k] is the
    fronthaul capacity into BS k+1; Ccoop[k][j] is the capacity of the
    cooperation link from BS j+1 to BS k+1 (zero diagonal).  Capacities
    are in bits per channel use.
    """

    G: np.ndarray
    P: float
    C: np.ndarray
    Ccoop: np.ndarray

    @staticmethod
    def make(G, P, C, Ccoop=None) -> "CranNetwork":
        G = np.atleast_2d(np.asarray(G, dtype=float))
        L, N = G.shape
        P = float(P)
        if P < 0:
            raise ValueError("power must be nonnegative")
        C = np.asarray(C, dtype=float).reshape(N)
        if C.min() < 0:
            raise ValueError("fronthaul capacities must be nonnegative")
        if Ccoop is None:
            Ccoop = np.zeros((N, N))
        Ccoop = np.asarray(Ccoop, dtype=float).reshape(N, N)
        if Ccoop.min() < 0:
            raise ValueError("cooperation capacities must be nonnegative")
        if np.any(np.diag(Ccoop) != 0):
            raise ValueError("cooperation matrix must have zero diagonal")
        G2, C2, T2 = G.copy(), C.copy(), Ccoop.copy()
        for a in (G2, C2, T2):
            a.flags.writeable = False
        return CranNetwork(G2, P, C2, T2)

    @property
    def N(self) -> int:
        return self.G.shape[1]

    @property
    def L(self) -> int:
        return self.G.shape[0]

    @staticmethod
    def symmetric(P, g12, g21, C, T=0.0) -> "CranNetwork":
        """2x2 instance with unit direct gains, C1=C2=C and C12=C21=T."""
        return CranNetwork.make([[1.0, g12], [g21, 1.0]], P, [C, C],
                                [[0.0, T], [T, 0.0]])

    def G_cut(self, users, bss) -> np.ndarray:
        users = sorted(users)
        bss = sorted(bss)
        return self.G[np.ix_([u - 1 for u in users], [k - 1 for k in bss])]

    def to_json(self) -> str:
        return json.dumps({
            "G": self.G.tolist(),
            "P": self.P,
            "C": self.C.tolist(),
            "Ccoop": self.Ccoop.tolist(),
        })

    @staticmethod
    def from_json(text: str) -> "CranNetwork":
        d = json.loads(text)
        return CranNetwork.make(d["G"], d["P"], d["C"], d.get("Ccoop"))
