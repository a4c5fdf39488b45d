"""Finite-alphabet joint distributions and discrete information measures.

Joint pmfs are dense numpy tensors with named axes.  All logarithms are
base two and 0*log(0) is taken as 0.  Distributions are treated as
immutable after construction; every measure below is a pure function of
its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .atoms import CONST, GAMMA, H, I, AtomSpec, parse_atom

__all__ = [
    "JointPmf",
    "Channel",
    "marginalize",
    "compose",
    "add_deterministic",
    "entropy",
    "mutual_info",
    "total_correlation",
    "blahut_arimoto",
    "atom_valuation",
    "random_joint_pmf",
]

MAX_CELLS = 10_000_000
_SUM_TOL = 1e-12


def _check_axes(variables):
    names = [n for n, _ in variables]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    cells = 1
    for _, size in variables:
        if size < 1:
            raise ValueError("alphabet sizes must be >= 1")
        cells *= size
    if cells > MAX_CELLS:
        raise ValueError(f"state space {cells} exceeds guard {MAX_CELLS}")


@dataclass(frozen=True)
class JointPmf:
    """Joint distribution over named finite-alphabet variables."""

    variables: tuple[tuple[str, int], ...]
    probs: np.ndarray

    @staticmethod
    def make(variables, probs) -> "JointPmf":
        variables = tuple((str(n), int(s)) for n, s in variables)
        _check_axes(variables)
        probs = np.asarray(probs, dtype=float)
        shape = tuple(s for _, s in variables)
        probs = probs.reshape(shape)
        if probs.min() < 0:
            raise ValueError("probabilities must be nonnegative")
        total = probs.sum()
        if abs(total - 1.0) > max(_SUM_TOL, 1e-12 * probs.size):
            raise ValueError(f"probabilities sum to {total}, not 1")
        p = probs.copy()
        p.flags.writeable = False
        return JointPmf(variables, p)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    def size_of(self, name: str) -> int:
        for n, s in self.variables:
            if n == name:
                return s
        raise KeyError(f"unknown variable {name!r}")

    def axis(self, name: str) -> int:
        for i, (n, _) in enumerate(self.variables):
            if n == name:
                return i
        raise KeyError(f"unknown variable {name!r}")

    def to_json(self) -> str:
        return json.dumps({
            "variables": [{"name": n, "size": s} for n, s in self.variables],
            "probs": [float(x) for x in self.probs.reshape(-1)],
        })

    @staticmethod
    def from_json(text: str) -> "JointPmf":
        d = json.loads(text)
        variables = [(v["name"], v["size"]) for v in d["variables"]]
        return JointPmf.make(variables, np.asarray(d["probs"]))


@dataclass(frozen=True)
class Channel:
    """Conditional pmf p(outputs | inputs) as a dense tensor.

    Tensor axes are inputs first, then outputs; every conditional slice
    sums to one.
    """

    inputs: tuple[tuple[str, int], ...]
    outputs: tuple[tuple[str, int], ...]
    probs: np.ndarray

    @staticmethod
    def make(inputs, outputs, probs) -> "Channel":
        inputs = tuple((str(n), int(s)) for n, s in inputs)
        outputs = tuple((str(n), int(s)) for n, s in outputs)
        _check_axes(inputs + outputs)
        if not outputs:
            raise ValueError("channel needs at least one output")
        probs = np.asarray(probs, dtype=float)
        shape = tuple(s for _, s in inputs) + tuple(s for _, s in outputs)
        probs = probs.reshape(shape)
        if probs.min() < 0:
            raise ValueError("channel probabilities must be nonnegative")
        out_axes = tuple(range(len(inputs), len(inputs) + len(outputs)))
        sums = probs.sum(axis=out_axes)
        if np.max(np.abs(sums - 1.0)) > 1e-12:
            raise ValueError("conditional slices must sum to 1")
        p = probs.copy()
        p.flags.writeable = False
        return Channel(inputs, outputs, p)

    @staticmethod
    def from_map(inputs, outputs, func) -> "Channel":
        """Deterministic channel: func maps an input index tuple to an output
        index tuple (or a single index when there is one output)."""
        inputs = tuple((str(n), int(s)) for n, s in inputs)
        outputs = tuple((str(n), int(s)) for n, s in outputs)
        shape_in = tuple(s for _, s in inputs)
        shape_out = tuple(s for _, s in outputs)
        probs = np.zeros(shape_in + shape_out)
        for idx in np.ndindex(*shape_in) if shape_in else [()]:
            y = func(*idx)
            if not isinstance(y, tuple):
                y = (y,)
            probs[idx + y] = 1.0
        return Channel.make(inputs, outputs, probs)

    def to_json(self) -> str:
        return json.dumps({
            "given": [{"name": n, "size": s} for n, s in self.inputs],
            "variables": [{"name": n, "size": s} for n, s in self.outputs],
            "probs": [float(x) for x in self.probs.reshape(-1)],
        })

    @staticmethod
    def from_json(text: str) -> "Channel":
        d = json.loads(text)
        inputs = [(v["name"], v["size"]) for v in d["given"]]
        outputs = [(v["name"], v["size"]) for v in d["variables"]]
        return Channel.make(inputs, outputs, np.asarray(d["probs"]))


def marginalize(pmf: JointPmf, keep) -> JointPmf:
    """Sum out every variable not in `keep` (order of `pmf` is preserved)."""
    keep = set(keep)
    unknown = keep - set(pmf.names)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    drop_axes = tuple(i for i, (n, _) in enumerate(pmf.variables) if n not in keep)
    if not drop_axes:
        return pmf
    new_vars = [(n, s) for n, s in pmf.variables if n in keep]
    return JointPmf.make(new_vars, pmf.probs.sum(axis=drop_axes))


def compose(pmf: JointPmf, channel: Channel) -> JointPmf:
    """Joint distribution of pmf's variables together with channel outputs."""
    in_names = [n for n, _ in channel.inputs]
    missing = set(in_names) - set(pmf.names)
    if missing:
        raise ValueError(f"channel inputs {sorted(missing)} not in pmf")
    clash = {n for n, _ in channel.outputs} & set(pmf.names)
    if clash:
        raise ValueError(f"channel outputs {sorted(clash)} already present")
    for n, s in channel.inputs:
        if pmf.size_of(n) != s:
            raise ValueError(f"alphabet mismatch on {n!r}: {pmf.size_of(n)} vs {s}")
    # Align channel input axes with their position in the pmf tensor, with
    # broadcast dimensions for the pmf variables the channel does not read.
    pmf_ordered_inputs = [n for n in pmf.names if n in in_names]
    src = [in_names.index(n) for n in pmf_ordered_inputs]
    ch = np.moveaxis(channel.probs, src, range(len(src)))
    bshape = tuple(s if n in in_names else 1 for n, s in pmf.variables)
    bshape += tuple(s for _, s in channel.outputs)
    ch = ch.reshape(bshape)
    joint = pmf.probs.reshape(pmf.probs.shape + (1,) * len(channel.outputs)) * ch
    return JointPmf.make(list(pmf.variables) + list(channel.outputs), joint)


def add_deterministic(pmf: JointPmf, name: str, size: int, args, func) -> JointPmf:
    """Extend a pmf with `name` = func(values of `args`)."""
    ch = Channel.from_map([(a, pmf.size_of(a)) for a in args], [(name, size)],
                          lambda *idx: func(*idx))
    return compose(pmf, ch)


def _xlog2x_sum(p: np.ndarray) -> float:
    mask = p > 0
    return float(-(p[mask] * np.log2(p[mask])).sum())


def entropy(pmf: JointPmf, subset) -> float:
    """H(X(subset)) in bits."""
    subset = set(subset)
    if not subset:
        return 0.0
    return _xlog2x_sum(marginalize(pmf, subset).probs)


def mutual_info(pmf: JointPmf, a, b, cond=()) -> float:
    """I(A;B|C) in bits; C may be empty.  Clamped at zero."""
    a, b, cond = set(a), set(b), set(cond)
    if not a or not b:
        raise ValueError("both sides of a mutual information must be nonempty")
    if a & b or a & cond or b & cond:
        raise ValueError("A, B, C must be pairwise disjoint")
    val = (entropy(pmf, a | cond) + entropy(pmf, b | cond)
           - entropy(pmf, a | b | cond) - entropy(pmf, cond))
    return max(0.0, val)


def total_correlation(pmf: JointPmf, subset) -> float:
    """Gamma(X(subset)) = sum_i H(X_i) - H(X(subset)), in bits."""
    subset = sorted(set(subset))
    if not subset:
        raise ValueError("total correlation needs at least one variable")
    if len(subset) == 1:
        return 0.0
    val = sum(entropy(pmf, {v}) for v in subset) - entropy(pmf, subset)
    return max(0.0, val)


def blahut_arimoto(channel: Channel, tol: float = 1e-10, max_iter: int = 10_000):
    """Capacity of a single-input single-output channel, in bits.

    Runs the classic alternating maximization; the lower bound on capacity
    is nondecreasing and the iteration stops once the upper/lower gap drops
    below `tol`.  Returns (capacity, input_pmf).
    """
    if len(channel.inputs) != 1 or len(channel.outputs) != 1:
        raise ValueError("blahut_arimoto expects a single-input single-output channel")
    W = channel.probs  # (|X|, |Y|)
    m = W.shape[0]
    if m < 1 or W.shape[1] < 1:
        raise ValueError("degenerate channel")
    r = np.full(m, 1.0 / m)
    logW = np.where(W > 0, np.log2(np.where(W > 0, W, 1.0)), 0.0)
    last_low = -np.inf
    for _ in range(int(max_iter)):
        q = r @ W  # output marginal
        with np.errstate(divide="ignore"):
            logq = np.where(q > 0, np.log2(np.where(q > 0, q, 1.0)), 0.0)
        # D_x = D(W(.|x) || q)
        D = np.einsum("xy,xy->x", W, logW - logq[None, :])
        low = float(r @ D)
        up = float(D.max())
        if up - low < tol:
            return max(0.0, low), r
        if low < last_low - 1e-12:
            raise RuntimeError("Blahut-Arimoto lower bound decreased")
        last_low = low
        r = r * np.exp2(D - D.max())
        r = r / r.sum()
    raise RuntimeError(f"Blahut-Arimoto did not converge in {max_iter} iterations")


def atom_valuation(pmf: JointPmf, atoms, constants=None) -> dict[str, float]:
    """Evaluate a list of atoms (AtomSpec or canonical names) on a pmf.

    Constants (capacities) are looked up in `constants`.  Returns a map
    from canonical atom name to value in bits.
    """
    constants = dict(constants or {})
    cache: dict[tuple[str, ...], float] = {}

    def ent(subset) -> float:
        key = tuple(sorted(subset))
        if not key:
            return 0.0
        if key not in cache:
            cache[key] = entropy(pmf, key)
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
            continue
        unknown = spec.variables() - set(pmf.names)
        if unknown:
            raise KeyError(f"atom {spec.name} references unknown variables {sorted(unknown)}")
        if spec.kind == H:
            out[spec.name] = ent(spec.groups[0])
        elif spec.kind == GAMMA:
            g = spec.groups[0]
            val = sum(ent({v}) for v in g) - ent(g) if len(g) > 1 else 0.0
            out[spec.name] = max(0.0, val)
        elif spec.kind == I:
            a, b = set(spec.groups[0]), set(spec.groups[1])
            c = set(spec.groups[2]) if len(spec.groups) == 3 else set()
            val = ent(a | c) + ent(b | c) - ent(a | b | c) - ent(c)
            out[spec.name] = max(0.0, val)
    return out


def random_joint_pmf(rng: np.random.Generator, variables, concentration=1.0) -> JointPmf:
    """Dirichlet-distributed random joint pmf over the given variables."""
    variables = [(str(n), int(s)) for n, s in variables]
    cells = int(np.prod([s for _, s in variables]))
    probs = rng.dirichlet(np.full(cells, concentration))
    return JointPmf.make(variables, probs.reshape([s for _, s in variables]))
