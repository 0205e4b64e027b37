"""Finite-dimensional algebras over an exact field, their one-sided modules,
bimodules, and the hom/tensor/duality constructions between them.

Conventions, fixed once and used everywhere:

* An algebra of dimension n is given by structure constants c[i][j][k] with
  e_i * e_j = sum_k c[i][j][k] e_k, plus the coordinate vector of 1.
* A left module action stores, per algebra basis element, the matrix of
  m -> e_i . m acting on column coordinate vectors; a right module stores the
  matrix of m -> m . e_i.  Axioms (unit, composition law appropriate to the
  side) are validated on construction by exhaustive basis enumeration.
* Module bases are ordered; free modules on g generators over an n-dim
  algebra use coordinates indexed gen-major: position j*n + i holds the e_i
  coefficient of generator j.
* Tensor products T (x) M use row-major pair coordinates a*dim(M) + b for
  t_a (x) m_b; hom spaces use the canonical kernel basis of the intertwining
  system, vectorized row-major.

Everything is exact and deterministic: identical inputs give identical
matrices, bases and witnesses.
"""

from __future__ import annotations

import random

import numpy as np

from .linalg import (Field, Subquotient, column_space_basis, in_span, inverse,
                     is_invertible, kernel_basis, rank, rref, solve_linear)


class FDAlgebra:
    """Associative unital algebra from structure constants.

    `radical_basis` may supply columns spanning the Jacobson radical for
    algebras where no computation strategy applies (noncommutative input);
    it is verified before use.
    """

    def __init__(self, field: Field, structure_constants, unit, name: str = "algebra",
                 radical_basis=None):
        self.field = field
        self.name = name
        c = np.array(structure_constants, dtype=object if field.p is None else np.int64)
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[0] != c.shape[2]:
            raise ValueError(f"{name}: structure constants must be an n*n*n array")
        self.sc = field.normalize(c)
        n = c.shape[0]
        self.dim = n
        self.unit = field.asarray(unit)
        if self.unit.shape != (n,):
            raise ValueError(f"{name}: unit vector has wrong length")
        # left_mult[i][k, j] = c[i, j, k];  right_mult[i][k, j] = c[j, i, k]
        self.left_mult = [self.sc[i].T.copy() for i in range(n)]
        self.right_mult = [self.sc[:, i, :].T.copy() for i in range(n)]
        self._validate()
        self._supplied_radical = None
        if radical_basis is not None:
            rb = field.asarray(radical_basis)
            if rb.ndim == 1:
                rb = rb.reshape(-1, 1)
            self._supplied_radical = rb
        self._radical = None
        self._opposite = None
        self._idempotents = None

    def _validate(self):
        f, n = self.field, self.dim
        for i in range(n):
            for j in range(n):
                lhs = self.mat_of_left(self.multiply_basis(i, j))
                rhs = f.mat_mul(self.left_mult[i], self.left_mult[j])
                if not f.equal(lhs, rhs):
                    k = self._first_assoc_failure(i, j)
                    raise ValueError(
                        f"{self.name}: associativity fails at basis triple ({i}, {j}, {k})")
        ident = f.identity(n)
        if not f.equal(self.mat_of_left(self.unit), ident):
            raise ValueError(f"{self.name}: unit axiom fails on the left")
        if not f.equal(self.mat_of_right(self.unit), ident):
            raise ValueError(f"{self.name}: unit axiom fails on the right")

    def _first_assoc_failure(self, i: int, j: int) -> int:
        f = self.field
        for k in range(self.dim):
            lhs = self.multiply(self.multiply_basis(i, j), self.basis_vector(k))
            rhs = self.multiply(self.basis_vector(i), self.multiply_basis(j, k))
            if not f.equal(lhs, rhs):
                return k
        return -1

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def multiply_basis(self, i: int, j: int) -> np.ndarray:
        return self.sc[i, j, :].copy()

    def multiply(self, u, v) -> np.ndarray:
        m = np.tensordot(np.asarray(u), self.sc, axes=(0, 0))
        return self.field.normalize(np.tensordot(np.asarray(v), m, axes=(0, 0)))

    def mat_of_left(self, u) -> np.ndarray:
        """Matrix of x -> u*x."""
        out = self.field.zeros((self.dim, self.dim))
        for i in range(self.dim):
            if u[i] != 0:
                out = out + np.asarray(self.left_mult[i]) * u[i]
        return self.field.normalize(out)

    def mat_of_right(self, u) -> np.ndarray:
        """Matrix of x -> x*u."""
        out = self.field.zeros((self.dim, self.dim))
        for i in range(self.dim):
            if u[i] != 0:
                out = out + np.asarray(self.right_mult[i]) * u[i]
        return self.field.normalize(out)

    @property
    def is_commutative(self) -> bool:
        return self.field.equal(self.sc, np.swapaxes(self.sc, 0, 1))

    def opposite(self) -> "FDAlgebra":
        if self._opposite is None:
            opp = FDAlgebra(self.field, np.swapaxes(self.sc, 0, 1), self.unit,
                            name=self.name + "^op",
                            radical_basis=self._supplied_radical)
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    # ---- radical ----------------------------------------------------------

    def radical_basis(self) -> np.ndarray:
        """Canonical basis (columns) of the Jacobson radical.

        Strategy: commutative char p -> stabilized kernel of the (linear)
        p-th power map; commutative char 0 -> radical of the trace form;
        otherwise a supplied basis is verified.  Raises ValueError
        ("unsupported") when no strategy applies.
        """
        if self._radical is None:
            self._radical = self._compute_radical()
        return self._radical

    def has_radical(self) -> bool:
        try:
            self.radical_basis()
            return True
        except ValueError:
            return False

    def _compute_radical(self) -> np.ndarray:
        f = self.field
        if self._supplied_radical is not None:
            self._verify_supplied_radical(self._supplied_radical)
            return self._supplied_radical
        if not self.is_commutative:
            # trace-form kernel as a candidate, then certify it outright;
            # in positive characteristic the form can be too degenerate, in
            # which case verification raises and the radical stays unsupported
            cand = kernel_basis(f, self._trace_gram())
            try:
                self._verify_supplied_radical(cand)
            except ValueError as err:
                raise ValueError(
                    f"{self.name}: unsupported radical computation for this "
                    f"noncommutative algebra ({err})") from None
            return cand
        if f.p is not None:
            frob = self._frobenius_matrix()
            power = frob
            covered = 1
            while covered < self.dim:
                power = f.mat_mul(frob, power)
                covered *= f.p
            return kernel_basis(f, power)
        return kernel_basis(f, self._trace_gram())

    def _trace_gram(self) -> np.ndarray:
        f = self.field
        gram = f.zeros((self.dim, self.dim))
        for i in range(self.dim):
            for j in range(self.dim):
                prod = f.mat_mul(self.left_mult[i], self.left_mult[j])
                gram[i, j] = f.normalize(np.asarray([np.trace(prod)]))[0]
        return gram

    def _frobenius_matrix(self) -> np.ndarray:
        f = self.field
        cols = []
        for i in range(self.dim):
            v = self.basis_vector(i)
            acc = v
            for _ in range(f.p - 1):
                acc = self.multiply(acc, v)
            cols.append(acc)
        return np.stack(cols, axis=1)

    def _verify_supplied_radical(self, rb: np.ndarray):
        f = self.field
        name = self.name
        # two-sided ideal
        for i in range(self.dim):
            for t in range(rb.shape[1]):
                left = f.mat_mul(self.mat_of_left(self.basis_vector(i)), rb[:, t])
                right = f.mat_mul(self.mat_of_right(self.basis_vector(i)), rb[:, t])
                if not in_span(f, rb, left) or not in_span(f, rb, right):
                    raise ValueError(f"{name}: supplied radical is not a two-sided ideal "
                                     f"(basis element {i}, radical column {t})")
        # nilpotency
        span = rb
        for _ in range(self.dim + 1):
            if span.shape[1] == 0:
                break
            prods = []
            for s in range(rb.shape[1]):
                m = self.mat_of_left(rb[:, s])
                prods.append(f.mat_mul(m, span))
            span = column_space_basis(f, np.concatenate(prods, axis=1))
        if span.shape[1] != 0:
            raise ValueError(f"{name}: supplied radical basis is not nilpotent")
        # semisimple quotient
        q = Subquotient(f, self.dim, sub=None, denom=rb)
        qdim = q.dim
        qmult = f.zeros((qdim, qdim, qdim))
        for i in range(qdim):
            for j in range(qdim):
                prod = self.multiply(q.section[:, i], q.section[:, j])
                qmult[i, j, :] = q.classify_vectors(prod)
        quotient = FDAlgebra(f, qmult, q.classify_vectors(self.unit),
                             name=self.name + "/rad")
        gram = f.zeros((qdim, qdim))
        for i in range(qdim):
            for j in range(qdim):
                prod = f.mat_mul(quotient.left_mult[i], quotient.left_mult[j])
                gram[i, j] = f.normalize(np.asarray([np.trace(prod)]))[0]
        if rank(f, gram) == qdim:
            return
        if quotient.is_commutative and f.p is not None:
            frob = quotient._frobenius_matrix()
            if rank(f, frob) == qdim:
                return
        raise ValueError(f"{name}: cannot certify the quotient by the supplied radical "
                         "as semisimple (trace form degenerate)")


class FDModule:
    """One-sided module given by per-basis-element action matrices."""

    def __init__(self, algebra: FDAlgebra, action, side: str = "left",
                 name: str = "module", check: bool = True):
        if side not in ("left", "right"):
            raise ValueError(f"{name}: side must be 'left' or 'right'")
        self.algebra = algebra
        self.side = side
        self.name = name
        f = algebra.field
        self.field = f
        acts = [f.asarray(a) for a in action]
        if len(acts) != algebra.dim:
            raise ValueError(f"{name}: expected {algebra.dim} action matrices")
        dims = {a.shape for a in acts}
        if len(dims) > 1 or any(a.ndim != 2 or a.shape[0] != a.shape[1] for a in acts):
            raise ValueError(f"{name}: action matrices must be square of equal size")
        self.action = acts
        self.dim = acts[0].shape[0] if acts else 0
        if check:
            self._validate()

    def _validate(self):
        f, alg = self.field, self.algebra
        ident = f.identity(self.dim)
        if not f.equal(self.action_of(alg.unit), ident):
            raise ValueError(f"{self.name}: unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = f.mat_mul(self.action[i], self.action[j])
                prod = alg.multiply_basis(i, j) if self.side == "left" \
                    else alg.multiply_basis(j, i)
                if not f.equal(lhs, self.action_of(prod)):
                    raise ValueError(
                        f"{self.name}: {self.side} action violates the composition "
                        f"law at basis pair ({i}, {j})")

    def action_of(self, vec) -> np.ndarray:
        f = self.field
        out = f.zeros((self.dim, self.dim))
        for i in range(self.algebra.dim):
            if vec[i] != 0:
                out = out + np.asarray(self.action[i]) * vec[i]
        return f.normalize(out)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"FDModule({self.name}, dim={self.dim}, side={self.side})"


def zero_module(algebra: FDAlgebra, side: str = "left") -> FDModule:
    f = algebra.field
    return FDModule(algebra, [f.zeros((0, 0)) for _ in range(algebra.dim)], side,
                    name="0", check=False)


def regular_module(algebra: FDAlgebra, side: str = "left") -> FDModule:
    mats = algebra.left_mult if side == "left" else algebra.right_mult
    return FDModule(algebra, mats, side, name=f"{algebra.name}({side} regular)")


def free_module(algebra: FDAlgebra, g: int, side: str = "left") -> FDModule:
    """Free module on g generators; coordinate j*n + i is e_i of generator j."""
    f = algebra.field
    n = algebra.dim
    base = algebra.left_mult if side == "left" else algebra.right_mult
    mats = []
    for i in range(n):
        m = f.zeros((g * n, g * n))
        for j in range(g):
            m[j * n:(j + 1) * n, j * n:(j + 1) * n] = base[i]
        mats.append(m)
    return FDModule(algebra, mats, side, name=f"free^{g}", check=False)


def free_generator_vectors(algebra: FDAlgebra, g: int) -> list[np.ndarray]:
    f = algebra.field
    n = algebra.dim
    out = []
    for j in range(g):
        v = f.zeros(g * n)
        v[j * n:(j + 1) * n] = algebra.unit
        out.append(v)
    return out


class ModuleMorphism:
    """A module map, stored as the matrix taking source to target coordinates."""

    def __init__(self, source: FDModule, target: FDModule, matrix, check: bool = True):
        self.source = source
        self.target = target
        f = source.field
        self.field = f
        self.matrix = f.asarray(matrix, shape=(target.dim, source.dim))
        if self.matrix.shape != (target.dim, source.dim):
            raise ValueError("morphism matrix shape does not match modules")
        if check:
            if source.side != target.side or source.algebra is not target.algebra:
                raise ValueError("morphism endpoints live over different structures")
            for i in range(source.algebra.dim):
                lhs = f.mat_mul(self.matrix, source.action[i])
                rhs = f.mat_mul(target.action[i], self.matrix)
                if not f.equal(lhs, rhs):
                    raise ValueError(f"matrix does not intertwine the actions "
                                     f"(algebra basis index {i})")

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self after other."""
        return ModuleMorphism(other.source, self.target,
                              self.field.mat_mul(self.matrix, other.matrix), check=False)

    def is_epi(self) -> bool:
        return rank(self.field, self.matrix) == self.target.dim

    def is_mono(self) -> bool:
        return rank(self.field, self.matrix) == self.source.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and is_invertible(self.field, self.matrix)

    def inverse(self) -> "ModuleMorphism":
        return ModuleMorphism(self.target, self.source,
                              inverse(self.field, self.matrix), check=False)

    def kernel(self):
        """Kernel as a module plus its inclusion."""
        f = self.field
        K = kernel_basis(f, self.matrix)
        acts = []
        for i in range(self.source.algebra.dim):
            moved = f.mat_mul(self.source.action[i], K)
            acts.append(solve_linear(f, K, moved) if K.shape[1] else f.zeros((0, 0)))
        mod = FDModule(self.source.algebra, acts, self.source.side,
                       name=f"ker({self.source.name})", check=False)
        incl = ModuleMorphism(mod, self.source, K, check=False)
        return mod, incl

    def cokernel(self):
        """Cokernel as a module plus the projection from the target."""
        f = self.field
        q = Subquotient(f, self.target.dim, sub=None, denom=self.matrix)
        acts = [q.induced_map(a, q) for a in self.target.action]
        mod = FDModule(self.target.algebra, acts, self.target.side,
                       name=f"coker({self.name if hasattr(self, 'name') else ''})",
                       check=False)
        proj = ModuleMorphism(self.target, mod, q.classify, check=False)
        return mod, proj


def identity_morphism(M: FDModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, M.field.identity(M.dim), check=False)


def direct_sum(modules: list[FDModule]):
    """Direct sum plus injection and projection morphisms."""
    if not modules:
        raise ValueError("direct sum of an empty list needs an algebra")
    alg, side, f = modules[0].algebra, modules[0].side, modules[0].field
    total = sum(m.dim for m in modules)
    acts = []
    for i in range(alg.dim):
        m = f.zeros((total, total))
        off = 0
        for mod in modules:
            m[off:off + mod.dim, off:off + mod.dim] = mod.action[i]
            off += mod.dim
        acts.append(m)
    S = FDModule(alg, acts, side, name="(+)".join(m.name for m in modules), check=False)
    injs, projs = [], []
    off = 0
    for mod in modules:
        inj = f.zeros((total, mod.dim))
        prj = f.zeros((mod.dim, total))
        for t in range(mod.dim):
            inj[off + t, t] = f.one
            prj[t, off + t] = f.one
        injs.append(ModuleMorphism(mod, S, inj, check=False))
        projs.append(ModuleMorphism(S, mod, prj, check=False))
        off += mod.dim
    return S, injs, projs


class Bimodule:
    """A (left_algebra, right_algebra)-bimodule with commuting actions."""

    def __init__(self, left_algebra: FDAlgebra, right_algebra: FDAlgebra,
                 left_action, right_action, name: str = "bimodule"):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.name = name
        f = left_algebra.field
        if right_algebra.field != f:
            raise ValueError(f"{name}: bimodule algebras over different fields")
        self.field = f
        self._left = FDModule(left_algebra, left_action, "left", name=name + "(left)")
        self._right = FDModule(right_algebra, right_action, "right", name=name + "(right)")
        if self._left.dim != self._right.dim:
            raise ValueError(f"{name}: left and right actions on different spaces")
        self.dim = self._left.dim
        for i in range(left_algebra.dim):
            for j in range(right_algebra.dim):
                ab = f.mat_mul(self._left.action[i], self._right.action[j])
                ba = f.mat_mul(self._right.action[j], self._left.action[i])
                if not f.equal(ab, ba):
                    raise ValueError(f"{name}: left and right actions do not commute "
                                     f"at basis pair ({i}, {j})")

    @property
    def left_action(self):
        return self._left.action

    @property
    def right_action(self):
        return self._right.action

    def as_left_module(self) -> FDModule:
        return self._left

    def as_right_module(self) -> FDModule:
        return self._right

    def k_dual(self) -> "Bimodule":
        """Vector-space dual: a (right_algebra, left_algebra)-bimodule."""
        la = [m.T.copy() for m in self._right.action]
        ra = [m.T.copy() for m in self._left.action]
        return Bimodule(self.right_algebra, self.left_algebra, la, ra,
                        name=f"D({self.name})")


def regular_bimodule(algebra: FDAlgebra) -> Bimodule:
    return Bimodule(algebra, algebra, algebra.left_mult, algebra.right_mult,
                    name=algebra.name)


# ---- hom / tensor / duality ------------------------------------------------

def hom_basis(M: FDModule, N: FDModule) -> list[np.ndarray]:
    """Canonical basis of the space of module morphisms M -> N, as matrices.

    Solves the intertwining system X rho^M_i = rho^N_i X with the canonical
    kernel basis; each basis vector is reshaped row-major to (dim N, dim M).
    """
    if M.side != N.side or M.algebra is not N.algebra:
        raise ValueError("hom_basis endpoints live over different structures")
    f = M.field
    dM, dN = M.dim, N.dim
    if dM == 0 or dN == 0:
        return []
    ident_N = f.identity(dN)
    ident_M = f.identity(dM)
    rows = []
    for i in range(M.algebra.dim):
        lhs = np.kron(ident_N, M.action[i].T)
        rhs = np.kron(N.action[i], ident_M)
        rows.append(f.normalize(lhs - rhs))
    system = np.concatenate(rows, axis=0)
    K = kernel_basis(f, system)
    return [K[:, t].reshape(dN, dM) for t in range(K.shape[1])]


def hom_vec_matrix(field: Field, basis: list[np.ndarray], dN: int, dM: int) -> np.ndarray:
    """Stack a hom basis as vec columns for coordinate solves."""
    if not basis:
        return field.zeros((dN * dM, 0))
    return np.stack([b.reshape(-1) for b in basis], axis=1)


def hom_coords(field: Field, H: np.ndarray, mat: np.ndarray) -> np.ndarray:
    return solve_linear(field, H, np.asarray(mat).reshape(-1))


def hom_coords_many(field: Field, H: np.ndarray, mats: list[np.ndarray]) -> np.ndarray:
    """Coordinates of several matrices in a hom basis, one solve, as columns."""
    if not mats:
        return field.zeros((H.shape[1], 0))
    rhs = np.stack([np.asarray(m).reshape(-1) for m in mats], axis=1)
    return solve_linear(field, H, rhs)


def k_dual_module(M: FDModule) -> FDModule:
    """Dual space with the transposed action on the other side."""
    side = "right" if M.side == "left" else "left"
    return FDModule(M.algebra, [m.T.copy() for m in M.action], side,
                    name=f"D({M.name})", check=False)


def k_dual_morphism(fm: ModuleMorphism, src_dual=None, tgt_dual=None) -> ModuleMorphism:
    src = src_dual if src_dual is not None else k_dual_module(fm.target)
    tgt = tgt_dual if tgt_dual is not None else k_dual_module(fm.source)
    return ModuleMorphism(src, tgt, fm.matrix.T.copy(), check=False)


class TensorFunctor:
    """T (x)_Lambda -, from left Lambda-modules to left Gamma-modules."""

    contravariant = False

    def __init__(self, T: Bimodule):
        self.T = T
        self._cache: dict[FDModule, tuple] = {}

    def data(self, M: FDModule):
        if M not in self._cache:
            self._cache[M] = self._build(M)
        return self._cache[M]

    def _build(self, M: FDModule):
        T = self.T
        if M.algebra is not T.right_algebra or M.side != "left":
            raise ValueError("tensor argument must be a left module over the "
                             "bimodule's right algebra")
        f = T.field
        dT, dM = T.dim, M.dim
        ident_T = f.identity(dT)
        ident_M = f.identity(dM)
        gens = []
        for j in range(T.right_algebra.dim):
            g = f.normalize(np.kron(T.right_action[j], ident_M)
                            - np.kron(ident_T, M.action[j]))
            gens.append(g)
        denom = np.concatenate(gens, axis=1) if gens else f.zeros((dT * dM, 0))
        q = Subquotient(f, dT * dM, sub=None, denom=denom)
        acts = [q.induced_map(np.kron(la, ident_M), q) for la in T.left_action]
        mod = FDModule(T.left_algebra, acts, "left",
                       name=f"{T.name}(x){M.name}", check=False)
        return mod, q

    def on_module(self, M: FDModule) -> FDModule:
        return self.data(M)[0]

    def on_morphism(self, fm: ModuleMorphism) -> ModuleMorphism:
        src, qs = self.data(fm.source)
        tgt, qt = self.data(fm.target)
        f = self.T.field
        amb = np.kron(f.identity(self.T.dim), fm.matrix)
        return ModuleMorphism(src, tgt, qs.induced_map(amb, qt), check=False)


class HomFromFunctor:
    """Hom_Gamma(T, -), from left Gamma-modules to left Lambda-modules."""

    contravariant = False

    def __init__(self, T: Bimodule):
        self.T = T
        self._cache: dict[FDModule, tuple] = {}

    def data(self, N: FDModule):
        if N not in self._cache:
            self._cache[N] = self._build(N)
        return self._cache[N]

    def _build(self, N: FDModule):
        T = self.T
        if N.algebra is not T.left_algebra or N.side != "left":
            raise ValueError("hom_from argument must be a left module over the "
                             "bimodule's left algebra")
        f = T.field
        basis = hom_basis(T.as_left_module(), N)
        H = hom_vec_matrix(f, basis, N.dim, T.dim)
        h = len(basis)
        acts = []
        for j in range(T.right_algebra.dim):
            moved = [f.mat_mul(b, T.right_action[j]) for b in basis]
            acts.append(hom_coords_many(f, H, moved))
        mod = FDModule(T.right_algebra, acts, "left",
                       name=f"Hom({T.name},{N.name})", check=False)
        return mod, basis, H

    def on_module(self, N: FDModule) -> FDModule:
        return self.data(N)[0]

    def on_morphism(self, fm: ModuleMorphism) -> ModuleMorphism:
        src, sbasis, _ = self.data(fm.source)
        tgt, _, Ht = self.data(fm.target)
        f = self.T.field
        moved = [f.mat_mul(fm.matrix, b) for b in sbasis]
        return ModuleMorphism(src, tgt, hom_coords_many(f, Ht, moved), check=False)


class HomIntoFunctor:
    """Hom_•(-, T): contravariant, swapping module sides.

    Left Gamma-modules map to right Lambda-modules via (f.lam)(m) = f(m).lam;
    right Lambda-modules map to left Gamma-modules via (gam.f)(m) = gam.f(m).
    """

    contravariant = True

    def __init__(self, T: Bimodule):
        self.T = T
        self._cache: dict[FDModule, tuple] = {}

    def data(self, M: FDModule):
        if M not in self._cache:
            self._cache[M] = self._build(M)
        return self._cache[M]

    def _build(self, M: FDModule):
        T = self.T
        f = T.field
        if M.side == "left":
            if M.algebra is not T.left_algebra:
                raise ValueError("hom_into: left module must live over the "
                                 "bimodule's left algebra")
            basis = hom_basis(M, T.as_left_module())
            H = hom_vec_matrix(f, basis, T.dim, M.dim)
            h = len(basis)
            out_alg, out_side = T.right_algebra, "right"
            movers = T.right_action
        else:
            if M.algebra is not T.right_algebra:
                raise ValueError("hom_into: right module must live over the "
                                 "bimodule's right algebra")
            basis = hom_basis(M, T.as_right_module())
            H = hom_vec_matrix(f, basis, T.dim, M.dim)
            h = len(basis)
            out_alg, out_side = T.left_algebra, "left"
            movers = T.left_action
        acts = []
        for j in range(out_alg.dim):
            # post-compose with the T-side action in both variants
            moved = [f.mat_mul(movers[j], b) for b in basis]
            acts.append(hom_coords_many(f, H, moved))
        mod = FDModule(out_alg, acts, out_side,
                       name=f"Hom({M.name},{T.name})", check=False)
        return mod, basis, H

    def on_module(self, M: FDModule) -> FDModule:
        return self.data(M)[0]

    def on_morphism(self, fm: ModuleMorphism) -> ModuleMorphism:
        """Hom(f, T): Hom(target, T) -> Hom(source, T)."""
        dom, dbasis, _ = self.data(fm.target)
        cod, _, Hc = self.data(fm.source)
        f = self.T.field
        moved = [f.mat_mul(b, fm.matrix) for b in dbasis]
        return ModuleMorphism(dom, cod, hom_coords_many(f, Hc, moved), check=False)


def tensor_over(T: Bimodule, M: FDModule) -> FDModule:
    return TensorFunctor(T).on_module(M)


def hom_from(T: Bimodule, N: FDModule) -> FDModule:
    return HomFromFunctor(T).on_module(N)


def hom_into(M: FDModule, T: Bimodule) -> FDModule:
    return HomIntoFunctor(T).on_module(M)


def adjunction_unit(F: TensorFunctor, G: HomFromFunctor, A: FDModule) -> ModuleMorphism:
    """The tensor-hom unit A -> Hom(T, T (x) A), a |-> (t |-> t (x) a)."""
    T = F.T
    f = T.field
    FA, q = F.data(A)
    GFA, _, H = G.data(FA)
    dT, dA = T.dim, A.dim
    m = f.zeros((GFA.dim, dA))
    for b in range(dA):
        cols = [c * dA + b for c in range(dT)]
        mat = q.classify[:, cols]
        m[:, b] = hom_coords(f, H, mat)
    return ModuleMorphism(A, GFA, m)


def adjunction_counit(F: TensorFunctor, G: HomFromFunctor, B: FDModule) -> ModuleMorphism:
    """The tensor-hom counit T (x) Hom(T, B) -> B, t (x) f |-> f(t)."""
    T = F.T
    f = T.field
    GB, basis, _ = G.data(B)
    FGB, q = F.data(GB)
    dT, h = T.dim, len(basis)
    ev = f.zeros((B.dim, dT * h))
    for c in range(dT):
        for i in range(h):
            ev[:, c * h + i] = basis[i][:, c]
    return ModuleMorphism(FGB, B, f.mat_mul(ev, q.section))


def biduality_unit(D: HomIntoFunctor, M: FDModule) -> ModuleMorphism:
    """The evaluation map M -> Hom(Hom(M, T), T), m |-> (f |-> f(m))."""
    f = D.T.field
    D1, basis1, _ = D.data(M)
    D2, _, H2 = D.data(D1)
    dT, h1 = D.T.dim, len(basis1)
    m = f.zeros((D2.dim, M.dim))
    for b in range(M.dim):
        ev = f.zeros((dT, h1))
        for i in range(h1):
            ev[:, i] = basis1[i][:, b]
        m[:, b] = hom_coords(f, H2, ev)
    return ModuleMorphism(M, D2, m)


def base_field_algebra(field: Field) -> FDAlgebra:
    """The one-dimensional algebra, for hom spaces carrying no extra action."""
    return FDAlgebra(field, [[[1]]], [1], name="k")


class ScalarHomFunctor:
    """Hom_•(-, N) into a fixed one-sided module, valued over the scalars.

    Contravariant; both arguments live on the same side of the same algebra,
    so no action survives on the hom space.
    """

    contravariant = True

    def __init__(self, N: FDModule):
        self.N = N
        self.base = base_field_algebra(N.field)
        self._cache: dict[FDModule, tuple] = {}

    def data(self, M: FDModule):
        if M not in self._cache:
            self._cache[M] = self._build(M)
        return self._cache[M]

    def _build(self, M: FDModule):
        N = self.N
        if M.side != N.side or M.algebra is not N.algebra:
            raise ValueError("scalar hom endpoints live over different structures")
        f = N.field
        basis = hom_basis(M, N)
        H = hom_vec_matrix(f, basis, N.dim, M.dim)
        mod = FDModule(self.base, [f.identity(len(basis))], "left",
                       name=f"Hom({M.name},{N.name})", check=False)
        return mod, basis, H

    def on_module(self, M: FDModule) -> FDModule:
        return self.data(M)[0]

    def on_morphism(self, fm: ModuleMorphism) -> ModuleMorphism:
        """Hom(f, N): Hom(target, N) -> Hom(source, N)."""
        dom, dbasis, _ = self.data(fm.target)
        cod, _, Hc = self.data(fm.source)
        f = self.N.field
        moved = [f.mat_mul(b, fm.matrix) for b in dbasis]
        return ModuleMorphism(dom, cod, hom_coords_many(f, Hc, moved), check=False)


# ---- projectivity, generators, isomorphism ---------------------------------

def radical_submodule_basis(M: FDModule) -> np.ndarray:
    """Canonical basis of rad(A).M (= M.rad(A) on the right)."""
    f = M.field
    rb = M.algebra.radical_basis()
    if rb.shape[1] == 0 or M.dim == 0:
        return f.zeros((M.dim, 0))
    pieces = [f.mat_mul(M.action_of(rb[:, t]), f.identity(M.dim))
              for t in range(rb.shape[1])]
    return column_space_basis(f, np.concatenate(pieces, axis=1))


def minimal_generators(M: FDModule) -> np.ndarray:
    """Columns lifting a basis of M / rad.M (a minimal generating set)."""
    f = M.field
    q = Subquotient(f, M.dim, sub=None, denom=radical_submodule_basis(M))
    return q.section


def generator_cover(M: FDModule, minimal: bool = True):
    """A surjection free^g -> M from a generating set; returns (free, epi)."""
    f = M.field
    if M.dim == 0:
        F0 = free_module(M.algebra, 0, M.side)
        return F0, ModuleMorphism(F0, M, f.zeros((0, 0)), check=False)
    gens = minimal_generators(M) if minimal else f.identity(M.dim)
    g = gens.shape[1]
    F0 = free_module(M.algebra, g, M.side)
    n = M.algebra.dim
    mat = f.zeros((M.dim, g * n))
    for j in range(g):
        for i in range(n):
            mat[:, j * n + i] = f.mat_mul(M.action[i], gens[:, j])
    epi = ModuleMorphism(F0, M, mat, check=False)
    assert epi.is_epi(), "generator cover failed to surject"
    return F0, epi


def quotient_algebra(A: FDAlgebra, ideal_basis: np.ndarray):
    """Quotient algebra by a (two-sided) ideal; returns (B, subquotient)."""
    f = A.field
    q = Subquotient(f, A.dim, sub=None, denom=ideal_basis)
    d = q.dim
    sc = f.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            prod = A.multiply(q.section[:, i], q.section[:, j])
            sc[i, j, :] = q.classify_vectors(prod)
    B = FDAlgebra(f, sc, q.classify_vectors(A.unit), name=A.name + "/ideal")
    return B, q


def _split_commutative_idempotents(B: FDAlgebra) -> list[np.ndarray]:
    """Primitive idempotents of a commutative semisimple algebra.

    The elements fixed by the p-th power map span the base-field form of the
    factor decomposition; eigen-splitting multiplication operators on that
    span isolates one line per factor.
    """
    f = B.field
    if f.p is None:
        if B.dim == 1:
            return [B.unit.copy()]
        raise ValueError(f"{B.name}: unsupported idempotent computation over "
                         "the rationals for a non-local quotient")
    frob = B._frobenius_matrix()
    V = kernel_basis(f, f.normalize(frob - f.identity(B.dim)))
    comps = [V]
    for t in range(V.shape[1]):
        v = V[:, t]
        mult = B.mat_of_left(v)
        refined = []
        for C in comps:
            if C.shape[1] == 1:
                refined.append(C)
                continue
            if f.p > 4096:
                raise ValueError(f"{B.name}: unsupported idempotent splitting "
                                 "over a large prime field")
            act = solve_linear(f, C, f.mat_mul(mult, C))
            found = 0
            for c in range(f.p):
                K = kernel_basis(f, f.normalize(act - c * f.identity(act.shape[0])))
                if K.shape[1]:
                    refined.append(f.mat_mul(C, K))
                    found += K.shape[1]
            assert found == C.shape[1], "eigen-splitting lost dimensions"
        comps = refined
    out = []
    for C in comps:
        u = C[:, 0]
        u2 = B.multiply(u, u)
        t = int(np.flatnonzero(np.asarray(u) != 0)[0])
        lam = f.normalize(np.asarray([u2[t] * f.inv(u[t])]))[0]
        eps = f.normalize(np.asarray(u) * f.inv(lam))
        assert f.equal(B.multiply(eps, eps), eps)
        out.append(eps)
    out.sort(key=lambda e: tuple(int(x) for x in e))
    return out


def primitive_idempotents(A: FDAlgebra) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents summing to 1.

    Computed in the semisimple quotient and lifted through the radical by
    Newton iteration, orthogonalizing sequentially.  Requires the radical and
    a commutative semisimple quotient.
    """
    if A._idempotents is not None:
        return [e.copy() for e in A._idempotents]
    f = A.field
    J = A.radical_basis()
    B, q = quotient_algebra(A, J)
    if not B.is_commutative:
        raise ValueError(f"{A.name}: unsupported idempotent computation for a "
                         "noncommutative semisimple quotient")
    eps_list = _split_commutative_idempotents(B)
    lifted = []
    done = f.zeros(A.dim)
    for eps in eps_list:
        u = f.mat_mul(q.section, eps)
        rest = f.normalize(A.unit - done)
        v = A.multiply(rest, A.multiply(u, rest))
        for _ in range(A.dim + 2):
            v2 = A.multiply(v, v)
            if f.equal(v2, v):
                break
            v3 = A.multiply(v2, v)
            v = f.normalize(np.asarray(v2) * 3 - np.asarray(v3) * 2)
        else:
            raise AssertionError("idempotent lifting failed to stabilize")
        lifted.append(v)
        done = f.normalize(done + v)
    assert f.equal(done, A.unit), "lifted idempotents do not sum to 1"
    for a in range(len(lifted)):
        for b in range(a + 1, len(lifted)):
            prod = A.multiply(lifted[a], lifted[b])
            assert f.equal(prod, f.zeros(A.dim)), "lifted idempotents not orthogonal"
    A._idempotents = [e.copy() for e in lifted]
    return lifted


def has_projective_covers(A: FDAlgebra) -> bool:
    try:
        primitive_idempotents(A)
        return True
    except ValueError:
        return False


def idempotent_summand(A: FDAlgebra, e: np.ndarray, side: str = "left"):
    """The regular-module summand A.e (left) or e.A (right) with its
    inclusion into the regular module."""
    f = A.field
    img = column_space_basis(f, A.mat_of_right(e) if side == "left"
                             else A.mat_of_left(e))
    reg = regular_module(A, side)
    acts = [solve_linear(f, img, f.mat_mul(rho, img)) for rho in reg.action]
    P = FDModule(A, acts, side, name=f"{A.name}.e" if side == "left"
                 else f"e.{A.name}", check=False)
    return P, ModuleMorphism(P, reg, img, check=False)


def projective_cover(M: FDModule):
    """Projective cover P -> M via primitive idempotents; returns (P, epi).

    Generators are chosen idempotent by idempotent: a factor-field basis of
    each isotypic piece of M/rad.M is lifted and covered by the matching
    regular-module summand.  The kernel of the result lies in rad.P.
    """
    f = M.field
    A = M.algebra
    if M.dim == 0:
        F0 = free_module(A, 0, M.side)
        return F0, ModuleMorphism(F0, M, f.zeros((0, 0)), check=False)
    idems = primitive_idempotents(A)
    J = A.radical_basis()
    _, qB = quotient_algebra(A, J)
    top = Subquotient(f, M.dim, sub=None, denom=radical_submodule_basis(M))
    t = top.dim

    def top_action(vec_in_A):
        return f.mat_mul(top.classify,
                         f.mat_mul(M.action_of(vec_in_A), top.section))

    pieces = []
    epis = []
    for e in idems:
        inde = top_action(e)
        W = column_space_basis(f, inde)
        if W.shape[1] == 0:
            continue
        factor_basis = [qB.section[:, c] for c in range(qB.dim)]
        factor_acts = [top_action(b) for b in factor_basis]
        chosen = []
        span = f.zeros((t, 0))
        for c in range(W.shape[1]):
            w = W[:, c]
            if span.shape[1] and in_span(f, span, w):
                continue
            chosen.append(w)
            orbit = [w.reshape(-1, 1)] + [f.mat_mul(a, w).reshape(-1, 1)
                                          for a in factor_acts]
            span = column_space_basis(
                f, np.concatenate([span] + orbit, axis=1))
        if not chosen:
            continue
        P_e, incl = idempotent_summand(A, e, M.side)
        act_e = M.action_of(e)
        for w in chosen:
            g = f.mat_mul(act_e, f.mat_mul(top.section, w))
            cols = [f.mat_mul(M.action_of(incl.matrix[:, c]), g)
                    for c in range(P_e.dim)]
            pieces.append(P_e)
            epis.append(np.stack(cols, axis=1))
    P, _, _ = direct_sum(pieces)
    mat = np.concatenate(epis, axis=1) if epis else f.zeros((M.dim, 0))
    epi = ModuleMorphism(P, M, f.normalize(mat), check=True)
    assert epi.is_epi(), "projective cover failed to surject"
    return P, epi


def solve_factorization(candidates: list[np.ndarray], target: np.ndarray,
                        field: Field, left: np.ndarray | None = None,
                        right: np.ndarray | None = None) -> np.ndarray | None:
    """Find coefficients x with sum x_i (L @ candidate_i @ R) = target, or None."""
    shaped = []
    for b in candidates:
        m = b
        if left is not None:
            m = field.mat_mul(left, m)
        if right is not None:
            m = field.mat_mul(m, right)
        shaped.append(m.reshape(-1))
    if not shaped:
        return None if not field.equal(target, field.zeros(target.shape)) \
            else field.zeros(0)
    A = np.stack(shaped, axis=1)
    try:
        return solve_linear(field, A, np.asarray(target).reshape(-1))
    except ValueError:
        return None


def morphism_through(src: FDModule, tgt: FDModule, left: np.ndarray | None,
                     right: np.ndarray | None, target_matrix: np.ndarray):
    """Solve for a module morphism X: src -> tgt with left @ X @ right = target.

    Returns a ModuleMorphism or None.  This is the workhorse for comparison
    lifts (left = a differential), splittings (left = an epimorphism) and
    injective extensions (right = a submodule inclusion).
    """
    f = src.field
    basis = hom_basis(src, tgt)
    x = solve_factorization(basis, target_matrix, f, left=left, right=right)
    if x is None:
        return None
    m = f.zeros((tgt.dim, src.dim))
    for i, b in enumerate(basis):
        if x.shape[0] and x[i] != 0:
            m = m + np.asarray(b) * x[i]
    return ModuleMorphism(src, tgt, f.normalize(m), check=False)


def is_projective(M: FDModule):
    """Decide projectivity by splitting a cover; returns (bool, section)."""
    minimal = M.algebra.has_radical()
    F0, epi = generator_cover(M, minimal=minimal)
    sec = morphism_through(M, F0, left=epi.matrix, right=None,
                           target_matrix=M.field.identity(M.dim))
    return (sec is not None), sec


def is_injective(M: FDModule):
    ok, sec = is_projective(k_dual_module(M))
    return ok, sec


def module_iso_decision(M: FDModule, N: FDModule, seed: int = 0, trials: int = 200,
                        exhaustive_cap: int = 10 ** 5):
    """('iso', w) / ('non-iso', None) certified / ('unknown', None) probabilistic.

    Exhaustive coefficient enumeration when |F|^dim Hom fits under the cap,
    seeded random sampling otherwise (negatives then only probabilistic).
    """
    f = M.field
    if M.dim != N.dim:
        return "non-iso", None
    if M.dim == 0:
        return "iso", ModuleMorphism(M, N, f.zeros((0, 0)), check=False)
    basis = hom_basis(M, N)
    h = len(basis)
    if h == 0:
        return "non-iso", None
    stacked = np.stack(basis, axis=0)

    def combine(coeffs):
        m = np.tensordot(np.asarray(coeffs), stacked, axes=(0, 0))
        return f.normalize(m)

    if f.p is not None and f.p ** h <= exhaustive_cap:
        counters = [0] * h
        total = f.p ** h
        for step in range(1, total):
            i = 0
            while True:
                counters[i] += 1
                if counters[i] < f.p:
                    break
                counters[i] = 0
                i += 1
            cand = combine(counters)
            if is_invertible(f, cand):
                return "iso", ModuleMorphism(M, N, cand, check=False)
        return "non-iso", None
    rng = random.Random(seed)
    hi = f.p - 1 if f.p is not None else 10
    for _ in range(trials):
        coeffs = [rng.randint(0, hi) for _ in range(h)]
        cand = combine(coeffs)
        if is_invertible(f, cand):
            return "iso", ModuleMorphism(M, N, cand, check=False)
    return "unknown", None


def module_iso_witness(M: FDModule, N: FDModule, seed: int = 0, trials: int = 200):
    verdict, w = module_iso_decision(M, N, seed=seed, trials=trials)
    return w if verdict == "iso" else None


def endomorphism_bimodule(M: FDModule):
    """The endomorphism algebra of a right module M, acting on the left.

    Returns (E, B) where E has basis the canonical hom basis of End(M), with
    multiplication x*y = x o y (so matrices multiply in the same order), and
    B is M as an (E, algebra)-bimodule.
    """
    if M.side != "right":
        raise ValueError("endomorphism_bimodule expects a right module")
    f = M.field
    basis = hom_basis(M, M)
    H = hom_vec_matrix(f, basis, M.dim, M.dim)
    n = len(basis)
    sc = f.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            prod = f.mat_mul(basis[i], basis[j])
            sc[i, j, :] = hom_coords(f, H, prod)
    unit = hom_coords(f, H, f.identity(M.dim))
    E = FDAlgebra(f, sc, unit, name=f"End({M.name})")
    B = Bimodule(E, M.algebra, [b.copy() for b in basis], M.action,
                 name=f"{M.name} as End-bimodule")
    return E, B
