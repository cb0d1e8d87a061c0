"""MeatAxe-style structure algorithms: simplicity, chopping, Krull-Schmidt.

Simplicity testing uses Norton's criterion: for a random element z of the
enveloping algebra and an irreducible factor f of its minimal polynomial
with nullity(f(z)) = deg f, one spin of a null vector plus one spin of a
transpose null vector is conclusive.  Randomness only drives the search for
such a witness; reported answers are always verified, so a bad random
stream can at worst raise InconclusiveError, never a wrong verdict.

Indecomposability is decided exactly: E = End(V) is local if and only if
the regular module of E/rad(E) has a single composition factor, where
rad(E) is computed as the annihilator of all composition factors of the
regular module of E (the trace-form shortcut is unsound in characteristic
p, so it is not used).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConsistencyError, InconclusiveError, InputError
from .finite_field import FiniteField
from . import limits
from . import linalg
from . import polynomials as P
from .modrep import Rep, hom_basis_matrices, regular_module
from .perm_group import PermGroup


@dataclass
class SimplicityResult:
    simple: bool
    witness: np.ndarray | None  # rows spanning a proper invariant subspace
    note: str

    def __bool__(self) -> bool:
        return self.simple


@dataclass
class IsoResult:
    isomorphic: bool
    map: np.ndarray | None  # intertwiner source -> target when isomorphic
    reason: str

    def __bool__(self) -> bool:
        return self.isomorphic


@dataclass
class Decomposition:
    module: Rep
    summands: list[tuple[Rep, int]]
    basis: np.ndarray  # rows are the new basis vectors, grouped by summand

    def conjugated_matrices(self) -> list[np.ndarray]:
        field = self.module.field
        C = self.basis.T
        Cinv = linalg.inverse(field, C)
        return [field.mat_mul(field.mat_mul(Cinv, M), C) for M in self.module.matrices]

    def total_dim(self) -> int:
        return sum(W.dim * m for W, m in self.summands)


def _random_algebra_element(field: FiniteField, mats, dim: int, rng) -> np.ndarray:
    z = field.zeros(dim, dim)
    for _ in range(1 + int(rng.integers(0, 3))):
        w = field.identity(dim)
        for _ in range(1 + int(rng.integers(0, 3))):
            w = field.mat_mul(w, mats[int(rng.integers(0, len(mats)))])
        c = 1 + int(rng.integers(0, field.q - 1))
        z = field.add(z, field.mul(np.int64(c), w))
    return z


def _kernel_samples(field: FiniteField, null: np.ndarray, rng, extra: int):
    """First basis row of a kernel plus a few random nonzero combinations."""
    out = [null[0]]
    for _ in range(extra):
        cs = rng.integers(0, field.q, size=null.shape[0]).astype(np.int64)
        v = field.mat_vec(null.T.copy(), cs)
        if v.any():
            out.append(v)
    return out


def _exhaustive_simple(field: FiniteField, mats, dim: int):
    """Complete scan: simple iff every nonzero vector generates everything.

    Only called when field.q ** dim <= SCAN_CAP.  One representative per
    projective line suffices since spin(c*v) = spin(v).
    """
    powers = field.q ** np.arange(dim, dtype=np.int64)
    for code in range(1, field.q**dim):
        v = (code // powers) % field.q
        nz = np.nonzero(v)[0]
        if v[nz[0]] != 1:
            continue
        span = linalg.spin(field, mats, [v])
        if span.dim < dim:
            return False, span.echelon_matrix()
    return True, None


def _norton(field: FiniteField, mats, dim: int, rng, attempts: int):
    """(True, None) if the module is simple, else (False, witness_rows).

    A proper spin of any kernel vector proves reducibility.  The simple
    verdict needs Norton's good case nullity(f(z)) = deg f, which need not
    exist when composition factors repeat, so bad factors still get their
    kernels sampled before moving on.
    """
    if dim == 1:
        return True, None
    mats_t = [np.ascontiguousarray(M.T) for M in mats]
    for k in range(attempts):
        if k == 0 and mats:
            z = mats[0]  # deterministic first try
        else:
            z = _random_algebra_element(field, mats, dim, rng)
        mu = P.min_poly_mat(field, z)
        for f, _ in P.factor(field, mu):
            fz = P.eval_matrix(field, f, z)
            null = linalg.nullspace(field, fz)
            good = null.shape[0] == P.degree(f)
            extra = 0 if good else 3
            for v in _kernel_samples(field, null, rng, extra):
                span = linalg.spin(field, mats, [v])
                if span.dim < dim:
                    return False, span.echelon_matrix()
            null_t = linalg.nullspace(field, fz.T)
            for w in _kernel_samples(field, null_t, rng, extra):
                span_t = linalg.spin(field, mats_t, [w])
                if span_t.dim < dim:
                    # annihilator of a transpose-invariant subspace is invariant
                    return False, linalg.nullspace(field, span_t.echelon_matrix())
            if good:
                return True, None
    if field.q**dim <= limits.SCAN_CAP:
        return _exhaustive_simple(field, mats, dim)
    raise InconclusiveError(
        "no conclusive Norton witness after %d attempts (dim %d)" % (attempts, dim)
    )


def _chop(field: FiniteField, mats, dim: int, rng, attempts: int):
    """Composition factors of a matrix-list module as (mats, dim) pairs."""
    if dim == 0:
        return []
    ok, witness = _norton(field, mats, dim, rng, attempts)
    if ok:
        return [(mats, dim)]
    sub = linalg.action_on_subspace(field, witness, mats)
    quo, _ = linalg.action_on_quotient(field, witness, mats)
    k = witness.shape[0]
    return _chop(field, sub, k, rng, attempts) + _chop(field, quo, dim - k, rng, attempts)


def is_simple(V: Rep, seed: int = 0, attempts: int | None = None) -> SimplicityResult:
    """Norton simplicity test; truthy result, with a witness subspace if not."""
    if V.dim == 0:
        raise InputError("simplicity is undefined for the zero module")
    rng = np.random.default_rng(seed)
    ok, witness = _norton(
        V.field, list(V.matrices), V.dim, rng, attempts or limits.RANDOM_ATTEMPTS
    )
    if ok:
        return SimplicityResult(True, None, "conclusive Norton witness")
    return SimplicityResult(False, witness, "explicit invariant subspace")


def composition_factors(V: Rep, seed: int = 0) -> list[Rep]:
    """Multiset of composition factors, as fresh representations."""
    rng = np.random.default_rng(seed)
    parts = _chop(V.field, list(V.matrices), V.dim, rng, limits.RANDOM_ATTEMPTS)
    reps = [Rep(V.group, V.field, mats, check=False) for mats, _ in parts]
    reps.sort(key=lambda W: W.dim)
    return reps


# ----- endomorphism algebra structure -----


def endomorphism_basis(field: FiniteField, mats, dim: int) -> list[np.ndarray]:
    return hom_basis_matrices(field, mats, mats, dim, dim)


def _algebra_right_mults(field: FiniteField, basis):
    """Right multiplication matrices of an algebra given by a matrix basis."""
    h = len(basis)
    d2 = basis[0].size
    space = linalg.RowSpace(field, d2, track=True)
    for b in basis:
        if not space.add(b.reshape(-1)):
            raise ConsistencyError("algebra basis is linearly dependent")
    mults = []
    for k in range(h):
        Rk = field.zeros(h, h)
        for j in range(h):
            prod = field.mat_mul(basis[j], basis[k])
            residual, coords = space.reduce_with_coords(prod.reshape(-1))
            if residual.any():
                raise ConsistencyError("algebra basis is not closed under products")
            Rk[:, j] = coords
        mults.append(Rk)
    return mults


def _radical_coords(field: FiniteField, mults, factors) -> np.ndarray:
    """Coordinates of rad(E): elements acting as zero on every factor."""
    h = len(mults)
    blocks = []
    for fmats, fdim in factors:
        if fdim == 0:
            continue
        blocks.append(np.stack([fm.reshape(-1) for fm in fmats], axis=1))
    Z = np.vstack(blocks)  # (sum fdim^2, h)
    return linalg.nullspace(field, Z)


def algebra_structure(field: FiniteField, basis, rng) -> tuple[int, int, bool]:
    """(dim E, dim rad E, is E local) for an algebra of matrices."""
    h = len(basis)
    if h == 1:
        return 1, 0, True
    mults = _algebra_right_mults(field, basis)
    factors = _chop(field, mults, h, rng, limits.RANDOM_ATTEMPTS)
    rad = _radical_coords(field, mults, factors)
    rad_dim = rad.shape[0]
    if rad_dim == 0:
        # semisimple: local means division algebra, i.e. simple regular module
        return h, 0, len(factors) == 1
    # build the quotient algebra E/rad on a complement basis of unit coords
    comp_space = linalg.RowSpace(field, h, track=True)
    for row in rad:
        comp_space.add(row)
    comp_idx = []
    for c in range(h):
        e = np.zeros(h, dtype=np.int64)
        e[c] = 1
        if comp_space.add(e):
            comp_idx.append(c)
    hq = len(comp_idx)
    assert hq == h - rad_dim

    def quotient_coords(vec: np.ndarray) -> np.ndarray:
        residual, coords = comp_space.reduce_with_coords(vec)
        assert not residual.any()
        return coords[rad_dim : rad_dim + hq]

    q_mults = []
    for k in range(hq):
        Qk = field.zeros(hq, hq)
        for j in range(hq):
            prod_coords = mults[comp_idx[k]][:, comp_idx[j]]
            Qk[:, j] = quotient_coords(prod_coords)
        q_mults.append(Qk)
    q_factors = _chop(field, q_mults, hq, rng, limits.RANDOM_ATTEMPTS)
    return h, rad_dim, len(q_factors) == 1


def end_structure(V: Rep, seed: int = 0) -> tuple[int, int, bool]:
    """(dim End, dim rad End, local?) of a module's endomorphism algebra."""
    basis = endomorphism_basis(V.field, list(V.matrices), V.dim)
    rng = np.random.default_rng(seed)
    return algebra_structure(V.field, basis, rng)


def is_indecomposable(V: Rep, seed: int = 0) -> bool:
    if V.dim == 0:
        raise InputError("indecomposability is undefined for the zero module")
    return end_structure(V, seed)[2]


def is_absolutely_indecomposable(V: Rep, seed: int = 0) -> bool:
    h, rad_dim, local = end_structure(V, seed)
    return local and h - rad_dim == 1


def is_absolutely_simple(V: Rep, seed: int = 0) -> bool:
    if not is_simple(V, seed):
        return False
    return len(endomorphism_basis(V.field, list(V.matrices), V.dim)) == 1


# ----- Krull-Schmidt decomposition -----


def _combo(field: FiniteField, basis, coeffs) -> np.ndarray:
    z = field.zeros(*basis[0].shape)
    for c, b in zip(coeffs, basis):
        if c:
            z = field.add(z, field.mul(np.int64(int(c)), b))
    return z


def _split_by_min_poly(field: FiniteField, phi: np.ndarray):
    """Generalized eigenspace splitting from a commuting operator, if any."""
    mu = P.min_poly_mat(field, phi)
    facs = P.factor(field, mu)
    if len(facs) < 2:
        return None
    pieces = []
    for f, e in facs:
        power = f
        for _ in range(e - 1):
            power = P.mul(field, power, f)
        pieces.append(linalg.nullspace(field, P.eval_matrix(field, power, phi)))
    assert sum(piece.shape[0] for piece in pieces) == phi.shape[0]
    return pieces


def _try_split(field: FiniteField, mats, dim: int, rng):
    """One splitting V = A + B as local row bases, or None if indecomposable.

    Raises InconclusiveError only when the endomorphism algebra is too big
    to scan and randomized search failed; never returns a wrong None.
    """
    if dim <= 1:
        return None
    basis = endomorphism_basis(field, mats, dim)
    h = len(basis)
    if h == 1:
        return None
    for phi in basis:  # deterministic candidates first
        pieces = _split_by_min_poly(field, phi)
        if pieces:
            return pieces
    _, _, local = algebra_structure(field, basis, rng)
    if local:
        return None
    for _ in range(limits.RANDOM_ATTEMPTS):
        coeffs = field.rand_codes(rng, h)
        if not coeffs.any():
            continue
        pieces = _split_by_min_poly(field, _combo(field, basis, coeffs))
        if pieces:
            return pieces
    if field.q**h <= limits.SCAN_CAP:
        # a non-local algebra owns a nontrivial idempotent; scan for one
        eye = field.identity(dim)
        for code in range(1, field.q**h):
            coeffs = []
            c = code
            for _ in range(h):
                coeffs.append(c % field.q)
                c //= field.q
            phi = _combo(field, basis, coeffs)
            if not np.array_equal(field.mat_mul(phi, phi), phi):
                continue
            if not phi.any() or np.array_equal(phi, eye):
                continue
            return [
                linalg.nullspace(field, phi),
                linalg.nullspace(field, field.sub(eye, phi)),
            ]
        raise ConsistencyError("non-local algebra without nontrivial idempotent")
    raise InconclusiveError(
        "indecomposable-summand search exhausted its budget (dim %d, end dim %d)"
        % (dim, h)
    )


def _module_key(V: Rep) -> tuple:
    return (V.dim, V.generator_char_polys())


def decompose(V: Rep, seed: int = 0) -> Decomposition:
    """Indecomposable direct summands, with an explicit splitting basis.

    The multiset of (dimension, multiplicity) pairs is seed-independent by
    the Krull-Schmidt theorem; the basis itself may vary with the seed.
    """
    field = V.field
    rng = np.random.default_rng(seed)
    leaves: list[np.ndarray] = []

    def rec(ambient_rows: np.ndarray, mats, dim: int):
        pieces = _try_split(field, mats, dim, rng)
        if pieces is None:
            leaves.append(ambient_rows)
            return
        for rows in pieces:
            amb = field.mat_mul(rows, ambient_rows)
            sub = linalg.action_on_subspace(field, rows, mats)
            rec(amb, sub, rows.shape[0])

    if V.dim:
        rec(field.identity(V.dim), list(V.matrices), V.dim)
    leaf_reps = [
        Rep(V.group, field, linalg.action_on_subspace(field, rows, list(V.matrices)), check=False)
        for rows in leaves
    ]
    # group leaves by isomorphism class
    classes: list[dict] = []
    for rows, rep in zip(leaves, leaf_reps):
        placed = False
        for cls in classes:
            res = is_isomorphic(rep, cls["rep"], seed=seed)
            if res:
                cls["members"].append((rows, res.map))
                placed = True
                break
        if not placed:
            classes.append({"rep": rep, "members": [(rows, field.identity(rep.dim))]})
    classes.sort(key=lambda cls: _module_key(cls["rep"]))
    all_rows = []
    summands = []
    for cls in classes:
        rep = cls["rep"]
        for rows, iso in cls["members"]:
            adjusted = field.mat_mul(linalg.inverse(field, iso).T, rows)
            all_rows.append(adjusted)
        summands.append((rep, len(cls["members"])))
    basis = np.vstack(all_rows) if all_rows else field.zeros(0, 0)
    return Decomposition(V, summands, basis)


# ----- isomorphism testing -----


def is_isomorphic(V: Rep, U: Rep, seed: int = 0) -> IsoResult:
    if V.group != U.group:
        raise InputError("isomorphism test requires modules of the same group")
    if V.field is not U.field:
        raise InputError("isomorphism test requires a common coefficient field")
    if V.dim != U.dim:
        return IsoResult(False, None, "different dimensions")
    if V.dim == 0:
        return IsoResult(True, V.field.zeros(0, 0), "zero modules")
    if V is U:
        return IsoResult(True, V.field.identity(V.dim), "identical")
    if V.generator_char_polys() != U.generator_char_polys():
        return IsoResult(False, None, "generator characteristic polynomials differ")
    field = V.field
    basis = hom_basis_matrices(field, list(V.matrices), list(U.matrices), V.dim, U.dim)
    h = len(basis)
    if h == 0:
        return IsoResult(False, None, "no nonzero homomorphisms")
    for M in basis:
        if linalg.is_invertible(field, M):
            return IsoResult(True, M, "invertible basis homomorphism")
    if h == 1:
        return IsoResult(False, None, "hom space is one-dimensional and singular")
    rng = np.random.default_rng(seed)
    for _ in range(limits.RANDOM_ATTEMPTS):
        coeffs = field.rand_codes(rng, h)
        if not coeffs.any():
            continue
        M = _combo(field, basis, coeffs)
        if linalg.is_invertible(field, M):
            return IsoResult(True, M, "invertible random combination")
    if field.q**h <= limits.SCAN_CAP:
        for code in range(1, field.q**h):
            coeffs = []
            c = code
            for _ in range(h):
                coeffs.append(c % field.q)
                c //= field.q
            M = _combo(field, basis, coeffs)
            if linalg.is_invertible(field, M):
                return IsoResult(True, M, "invertible combination (exhaustive)")
        return IsoResult(False, None, "no invertible homomorphism exists")
    raise InconclusiveError("isomorphism search exhausted its randomized budget")


# ----- canonical forms and the set of simple modules -----


def try_canonical_form(V: Rep) -> Rep | None:
    """Least spin-basis presentation of a simple module, if small enough.

    Scans all nonzero seed vectors, spins each to a full basis (simple
    modules are cyclic from every nonzero vector) and keeps the matrix
    tuple that is lexicographically least.  Independent of the input basis.
    """
    field = V.field
    d = V.dim
    if d == 0 or d > limits.CANONICAL_DIM_CAP or field.q**d > limits.CANONICAL_ORBIT_CAP:
        return None
    mats = list(V.matrices)
    best_key = None
    best = None
    for code in range(1, field.q**d):
        v = np.zeros(d, dtype=np.int64)
        c = code
        for i in range(d):
            v[i] = c % field.q
            c //= field.q
        span = linalg.spin(field, mats, [v])
        assert span.dim == d, "canonical form requires a simple module"
        B = np.stack(span.raw_basis_rows())
        A = linalg.action_on_subspace(field, B, mats)
        key = tuple(int(x) for M in A for x in M.reshape(-1))
        if best_key is None or key < best_key:
            best_key = key
            best = A
    return Rep(V.group, field, best, check=False)


@dataclass
class SimpleSet:
    group: PermGroup
    field: FiniteField
    modules: tuple[Rep, ...]
    end_degrees: tuple[int, ...]
    seed: int = dc_field(default=0)

    def __len__(self) -> int:
        return len(self.modules)

    def index_of(self, W: Rep, seed: int = 0) -> int:
        for i, M in enumerate(self.modules):
            if is_isomorphic(W, M, seed=seed):
                return i
        raise ConsistencyError("module is not isomorphic to any listed simple module")


def simple_modules(G: PermGroup, K: FiniteField, seed: int = 0) -> SimpleSet:
    """All simple KG-modules up to isomorphism, from chopping the regular module."""
    reg = regular_module(G, K)
    factors = composition_factors(reg, seed=seed)
    reps: list[Rep] = []
    for W in factors:
        if not any(is_isomorphic(W, M, seed=seed) for M in reps):
            reps.append(W)
    canon = [try_canonical_form(W) or W for W in reps]
    degrees = [len(endomorphism_basis(K, list(W.matrices), W.dim)) for W in canon]
    order = sorted(range(len(canon)), key=lambda i: (canon[i].dim, degrees[i], _module_key(canon[i])))
    return SimpleSet(
        G,
        K,
        tuple(canon[i] for i in order),
        tuple(degrees[i] for i in order),
        seed,
    )
