"""Bounded chain complexes of finite-dimensional modules.

Homological (lower) indexing throughout: differentials lower the degree.
The degree-l translate scales differentials by (-1)^l, i.e. the shifted
complex has entries X_{n-l} and differential (-1)^l d_{n-l}.

Chain maps carry an explicit degree window; the chain condition is validated
exactly on every degree whose equation lies inside the window.  Comparison
lifts against truncated complexes are therefore honest about the range on
which they are certified.
"""

from __future__ import annotations

import numpy as np

from .fdalg import (FDAlgebra, FDModule, ModuleMorphism, generator_cover,
                    has_projective_covers, hom_basis, k_dual_module,
                    projective_cover, zero_module)
from .linalg import Subquotient, kernel_basis, solve_linear


class ChainComplex:
    def __init__(self, algebra: FDAlgebra, side: str, modules: dict,
                 differentials: dict, check: bool = True, name: str = "complex"):
        self.algebra = algebra
        self.side = side
        self.field = algebra.field
        self.name = name
        self.modules = {n: m for n, m in modules.items() if m.dim > 0}
        self._zero = zero_module(algebra, side)
        self.differentials = {n: d for n, d in differentials.items()
                              if d.matrix.shape[0] and d.matrix.shape[1]}
        if self.modules:
            self.lo = min(self.modules)
            self.hi = max(self.modules)
        else:
            self.lo, self.hi = 0, -1
        self._homology = {}
        if check:
            self._validate()

    def _validate(self):
        f = self.field
        for n, d in self.differentials.items():
            if d.matrix.shape != (self.module_at(n - 1).dim, self.module_at(n).dim):
                raise ValueError(f"{self.name}: differential at {n} has wrong shape")
        for n in range(self.lo, self.hi + 2):
            dd = f.mat_mul(self.differential_matrix(n - 1),
                           self.differential_matrix(n))
            if not f.equal(dd, f.zeros(dd.shape)):
                raise ValueError(f"{self.name}: d o d != 0 at degree {n}")

    def module_at(self, n: int) -> FDModule:
        return self.modules.get(n, self._zero)

    def differential_matrix(self, n: int) -> np.ndarray:
        d = self.differentials.get(n)
        if d is not None:
            return d.matrix
        return self.field.zeros((self.module_at(n - 1).dim, self.module_at(n).dim))

    def differential(self, n: int) -> ModuleMorphism:
        d = self.differentials.get(n)
        if d is not None:
            return d
        return ModuleMorphism(self.module_at(n), self.module_at(n - 1),
                              self.differential_matrix(n), check=False)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def shift(self, ell: int) -> "ChainComplex":
        """Translate: entries move up by ell, differentials scale by (-1)^ell."""
        f = self.field
        sign = 1 if ell % 2 == 0 else -1
        mods = {n + ell: m for n, m in self.modules.items()}
        diffs = {}
        for n, d in self.differentials.items():
            mat = d.matrix if sign == 1 else f.normalize(-d.matrix)
            diffs[n + ell] = ModuleMorphism(d.source, d.target, mat, check=False)
        return ChainComplex(self.algebra, self.side, mods, diffs, check=False,
                            name=f"S^{ell}{self.name}")

    def homology(self, n: int) -> "HomologyData":
        if n not in self._homology:
            self._homology[n] = HomologyData(self, n)
        return self._homology[n]

    def homology_dims(self, degrees) -> dict:
        return {n: self.homology(n).module.dim for n in degrees}


class HomologyData:
    """H_n as a module plus subquotient bookkeeping.

    section: ambient representatives of the homology basis (cycles);
    classify: evaluates the class of any cycle in those coordinates.
    """

    def __init__(self, complex_: ChainComplex, n: int):
        f = complex_.field
        Xn = complex_.module_at(n)
        Z = kernel_basis(f, complex_.differential_matrix(n))
        B = complex_.differential_matrix(n + 1)
        q = Subquotient(f, Xn.dim, sub=Z, denom=B)
        acts = [q.induced_map(a, q) for a in Xn.action]
        self.complex = complex_
        self.degree = n
        self.module = FDModule(complex_.algebra, acts, complex_.side,
                               name=f"H_{n}({complex_.name})", check=False)
        self.section = q.section
        self.classify = q.classify


class ChainMap:
    """Degreewise map between complexes, certified on an explicit window."""

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: dict, window: tuple[int, int], check: bool = True):
        self.source = source
        self.target = target
        self.field = source.field
        self.window = window
        self.components = {}
        for n in range(window[0], window[1] + 1):
            mat = components.get(n)
            s, t = source.module_at(n), target.module_at(n)
            if mat is None:
                mat = self.field.zeros((t.dim, s.dim))
            mat = np.asarray(mat)
            if mat.shape != (t.dim, s.dim):
                raise ValueError(f"chain map component at {n} has wrong shape")
            self.components[n] = mat
        if check:
            self._validate()

    def _validate(self):
        f = self.field
        lo, hi = self.window
        for n in range(lo + 1, hi + 1):
            lhs = f.mat_mul(self.target.differential_matrix(n), self.components[n])
            rhs = f.mat_mul(self.components[n - 1],
                            self.source.differential_matrix(n))
            if not f.equal(lhs, rhs):
                raise ValueError(f"chain map condition fails at degree {n}")

    def component(self, n: int) -> np.ndarray:
        mat = self.components.get(n)
        if mat is None:
            return self.field.zeros((self.target.module_at(n).dim,
                                     self.source.module_at(n).dim))
        return mat

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other (other: A -> B, self: B -> C)."""
        lo = max(self.window[0], other.window[0])
        hi = min(self.window[1], other.window[1])
        comps = {n: self.field.mat_mul(self.component(n), other.component(n))
                 for n in range(lo, hi + 1)}
        return ChainMap(other.source, self.target, comps, (lo, hi), check=False)

    def shift(self, ell: int, shifted_source=None, shifted_target=None) -> "ChainMap":
        src = shifted_source if shifted_source is not None else self.source.shift(ell)
        tgt = shifted_target if shifted_target is not None else self.target.shift(ell)
        comps = {n + ell: m for n, m in self.components.items()}
        return ChainMap(src, tgt, comps, (self.window[0] + ell, self.window[1] + ell),
                        check=False)

    def induced_on_homology(self, n: int) -> ModuleMorphism:
        hs = self.source.homology(n)
        ht = self.target.homology(n)
        mat = self.field.mat_mul(ht.classify,
                                 self.field.mat_mul(self.component(n), hs.section))
        return ModuleMorphism(hs.module, ht.module, mat, check=False)


def is_quasi_iso(f: ChainMap, degrees=None) -> bool:
    if degrees is None:
        lo = min(f.source.lo, f.target.lo)
        hi = max(f.source.hi, f.target.hi)
        lo = max(lo, f.window[0])
        hi = min(hi, f.window[1] - 1)
        degrees = range(lo, hi + 1)
    for n in degrees:
        if not f.induced_on_homology(n).is_iso():
            return False
    return True


def apply_functor(functor, C: ChainComplex) -> ChainComplex:
    """Image complex under an additive functor (contravariant ones negate
    degrees: the entry at -n is F(X_n))."""
    first = None
    for n in C.degrees():
        first = functor.on_module(C.module_at(n))
        break
    alg = first.algebra if first is not None else functor.on_module(C._zero).algebra
    side = first.side if first is not None else "left"
    mods, diffs = {}, {}
    if not functor.contravariant:
        for n in C.degrees():
            mods[n] = functor.on_module(C.module_at(n))
        for n in range(C.lo + 1, C.hi + 1):
            diffs[n] = functor.on_morphism(C.differential(n))
    else:
        for n in C.degrees():
            mods[-n] = functor.on_module(C.module_at(n))
        for n in range(C.lo + 1, C.hi + 1):
            # F(d_n: X_n -> X_{n-1}) : F(X_{n-1}) -> F(X_n), placed at 1-n
            diffs[1 - n] = functor.on_morphism(C.differential(n))
    return ChainComplex(alg, side, mods, diffs, check=False,
                        name=f"F({C.name})")


def apply_functor_map(functor, f: ChainMap, source_image=None,
                      target_image=None) -> ChainMap:
    src = source_image if source_image is not None else apply_functor(functor, f.source)
    tgt = target_image if target_image is not None else apply_functor(functor, f.target)
    comps = {}
    if not functor.contravariant:
        for n in range(f.window[0], f.window[1] + 1):
            mor = ModuleMorphism(f.source.module_at(n), f.target.module_at(n),
                                 f.component(n), check=False)
            comps[n] = functor.on_morphism(mor).matrix
        return ChainMap(src, tgt, comps, f.window, check=False)
    for n in range(f.window[0], f.window[1] + 1):
        mor = ModuleMorphism(f.source.module_at(n), f.target.module_at(n),
                             f.component(n), check=False)
        comps[-n] = functor.on_morphism(mor).matrix
    window = (-f.window[1], -f.window[0])
    return ChainMap(tgt, src, comps, window, check=False)


class Resolution:
    """A bounded resolution: complex, (co)augmentation, termination data."""

    def __init__(self, module: FDModule, complex_: ChainComplex,
                 augmentation: ModuleMorphism, flavor: str, minimal: bool,
                 terminated_at, syzygies):
        self.module = module
        self.complex = complex_
        self.augmentation = augmentation
        self.flavor = flavor
        self.minimal = minimal
        self.terminated_at = terminated_at
        self.syzygies = syzygies

    @property
    def length(self) -> int:
        return self.complex.hi if self.flavor == "projective" else -self.complex.lo


def projective_resolution(M: FDModule, length: int,
                          minimal: bool | None = None) -> Resolution:
    """Projective resolution P_length -> ... -> P_0 -> M, canonical steps.

    Minimal mode resolves by projective covers (kernel of every step inside
    the radical), so termination certifies the projective dimension exactly;
    the fallback uses free covers on a full basis.  minimal=None chooses
    covers whenever primitive idempotents are computable.  Stops early
    (recording terminated_at) when a kernel vanishes.
    """
    if minimal is None:
        minimal = has_projective_covers(M.algebra)
    f = M.field
    cover_fn = projective_cover if minimal else \
        (lambda X: generator_cover(X, minimal=False))
    mods, diffs, syzygies = {}, {}, []
    F0, eps = cover_fn(M)
    mods[0] = F0
    current = eps
    terminated = None
    if M.dim == 0:
        terminated = 0
    for s in range(length):
        if terminated is not None:
            break
        K, incl = current.kernel()
        syzygies.append(K)
        if K.dim == 0:
            terminated = s
            break
        Fn, cover = cover_fn(K)
        d = ModuleMorphism(Fn, mods[s],
                           f.mat_mul(incl.matrix, cover.matrix), check=False)
        mods[s + 1] = Fn
        diffs[s + 1] = d
        current = cover
    cx = ChainComplex(M.algebra, M.side, mods, diffs, check=True,
                      name=f"P({M.name})")
    return Resolution(M, cx, eps, "projective", minimal, terminated, syzygies)


def injective_resolution(M: FDModule, length: int, minimal: bool | None = None) -> Resolution:
    """Injective coresolution M -> I_0 -> I_{-1} -> ... built by dualizing a
    projective resolution of the dual module on the other side."""
    f = M.field
    dual = k_dual_module(M)
    R = projective_resolution(dual, length, minimal=minimal)
    mods, diffs = {}, {}
    duals = {}
    for s in R.complex.degrees():
        duals[s] = k_dual_module(R.complex.module_at(s))
        mods[-s] = duals[s]
    for s in range(1, R.complex.hi + 1):
        # D(d_s: R_s -> R_{s-1}) : I_{-(s-1)} -> I_{-s}
        mat = R.complex.differential_matrix(s).T.copy()
        diffs[-(s - 1)] = ModuleMorphism(duals[s - 1], duals[s], mat, check=False)
    cx = ChainComplex(M.algebra, M.side, mods, diffs, check=True,
                      name=f"I({M.name})")
    coaug = ModuleMorphism(M, cx.module_at(0), R.augmentation.matrix.T.copy(),
                           check=False) if M.dim else \
        ModuleMorphism(M, cx.module_at(0), f.zeros((cx.module_at(0).dim, 0)),
                       check=False)
    cosyzygies = [k_dual_module(K) for K in R.syzygies]
    return Resolution(M, cx, coaug, "injective", R.minimal, R.terminated_at,
                      cosyzygies)


def morphism_solve(src: FDModule, tgt: FDModule, constraints) -> ModuleMorphism | None:
    """Module morphism X: src -> tgt with L @ X @ R = C for each (L, R, C)."""
    f = src.field
    basis = hom_basis(src, tgt)
    vec_rows = []
    rhs_rows = []
    for (L, R, C) in constraints:
        cols = []
        for b in basis:
            m = b
            if L is not None:
                m = f.mat_mul(L, m)
            if R is not None:
                m = f.mat_mul(m, R)
            cols.append(np.asarray(m).reshape(-1))
        target_vec = np.asarray(C).reshape(-1)
        if cols:
            vec_rows.append(np.stack(cols, axis=1))
        else:
            vec_rows.append(f.zeros((target_vec.shape[0], 0)))
        rhs_rows.append(target_vec)
    A = np.concatenate(vec_rows, axis=0) if vec_rows else f.zeros((0, len(basis)))
    bvec = np.concatenate(rhs_rows) if rhs_rows else f.zeros(0)
    try:
        x = solve_linear(f, A, bvec)
    except ValueError:
        return None
    mat = f.zeros((tgt.dim, src.dim))
    for i, b in enumerate(basis):
        if x.shape[0] and x[i] != 0:
            mat = mat + np.asarray(b) * x[i]
    return ModuleMorphism(src, tgt, f.normalize(mat), check=False)


def lift_to_resolution(sigma: ModuleMorphism, P: Resolution, X: ChainComplex,
                       ell: int, junk_degrees=()) -> ChainMap:
    """Chain map P -> translate(X, -ell) inducing sigma: A -> H_ell(X) on H_0.

    Requires the homology of X concentrated in degree ell (junk_degrees names
    degrees spoiled by truncation, exempt from the check).  The lift is a
    quasi-isomorphism on the verified window exactly when sigma is an
    isomorphism.
    """
    f = P.complex.field
    for n in X.degrees():
        if n != ell and n not in junk_degrees and X.homology(n).module.dim:
            raise ValueError(f"homology of {X.name} not concentrated in degree "
                             f"{ell} (nonzero at {n})")
    h = X.homology(ell)
    if sigma.target is not h.module and sigma.target.dim != h.module.dim:
        raise ValueError("sigma target does not match H_ell(X)")
    S = X.shift(-ell)
    top = min(P.complex.hi, X.hi - ell)
    comps = {}
    # degree 0: land in cycles, induce sigma on classes
    P0 = P.complex.module_at(0)
    S0 = S.module_at(0)
    want = f.mat_mul(sigma.matrix, P.augmentation.matrix)
    phi0 = morphism_solve(P0, S0, [
        (S.differential_matrix(0), None, f.zeros((S.module_at(-1).dim, P0.dim))),
        (h.classify, None, want),
    ])
    if phi0 is None:
        raise ValueError("projective lift failed at degree 0")
    comps[0] = phi0.matrix
    for n in range(1, top + 1):
        rhs = f.mat_mul(comps[n - 1], P.complex.differential_matrix(n))
        phin = morphism_solve(P.complex.module_at(n), S.module_at(n),
                              [(S.differential_matrix(n), None, rhs)])
        if phin is None:
            raise ValueError(f"projective lift failed at degree {n}")
        comps[n] = phin.matrix
    # the window extends by a zero component past the end of the target when
    # the last built component kills the next boundaries (automatic whenever
    # the target's top homology vanishes)
    if top >= 0 and S.module_at(top + 1).dim == 0 \
            and P.complex.module_at(top + 1).dim > 0:
        resid = f.mat_mul(comps[top], P.complex.differential_matrix(top + 1))
        if f.equal(resid, f.zeros(resid.shape)):
            top += 1
    return ChainMap(P.complex, S, comps, (0, top), check=True)


def colift_to_injective(tau: ModuleMorphism, Y: ChainComplex, I: Resolution,
                        ell: int, junk_degrees=()) -> ChainMap:
    """Chain map translate(Y, -ell) -> I inducing tau: H_ell(Y) -> B on H_0.

    Dual of lift_to_resolution; requires homology of Y concentrated in ell
    (junk_degrees names degrees spoiled by truncation, exempt from the check).
    """
    f = Y.field
    for n in Y.degrees():
        if n != ell and n not in junk_degrees and Y.homology(n).module.dim:
            raise ValueError(f"homology of {Y.name} not concentrated in degree "
                             f"{ell} (nonzero at {n})")
    h = Y.homology(ell)
    S = Y.shift(-ell)
    bottom = max(I.complex.lo, Y.lo - ell)
    comps = {}
    S0 = S.module_at(0)
    I0 = I.complex.module_at(0)
    # cycles of S at 0 = cycles of Y at ell (the shift preserves kernels)
    Z = kernel_basis(f, S.differential_matrix(0))
    given = f.mat_mul(I.augmentation.matrix,
                      f.mat_mul(tau.matrix, f.mat_mul(h.classify, Z)))
    psi0 = morphism_solve(S0, I0, [(None, Z, given)])
    if psi0 is None:
        raise ValueError("injective colift failed at degree 0")
    comps[0] = psi0.matrix
    for n in range(-1, bottom - 1, -1):
        # need psi_n with psi_n o d^S_{n+1} = d^I_{n+1} o psi_{n+1}
        rhs = f.mat_mul(I.complex.differential_matrix(n + 1), comps[n + 1])
        constraints = [(None, S.differential_matrix(n + 1), rhs)]
        if S.module_at(n - 1).dim == 0 and S.module_at(n).dim:
            # bottom of the source: impose the last chain condition too
            constraints.append((I.complex.differential_matrix(n), None,
                                f.zeros((I.complex.module_at(n - 1).dim,
                                         S.module_at(n).dim))))
        psin = morphism_solve(S.module_at(n), I.complex.module_at(n), constraints)
        if psin is None:
            raise ValueError(f"injective colift failed at degree {n}")
        comps[n] = psin.matrix
    # the window extends to degree 1 by a zero component: psi_0 kills
    # boundaries because it factors through the class map
    return ChainMap(S, I.complex, comps, (bottom, 1), check=True)


def comparison_lift(fm: ModuleMorphism, P: Resolution, Q: Resolution) -> ChainMap:
    """Lift a module morphism to a chain map between free resolutions."""
    f = fm.field
    comps = {}
    top = min(P.complex.hi, Q.complex.hi)
    phi0 = morphism_solve(P.complex.module_at(0), Q.complex.module_at(0),
                          [(Q.augmentation.matrix, None,
                            f.mat_mul(fm.matrix, P.augmentation.matrix))])
    if phi0 is None:
        raise ValueError("comparison lift failed at degree 0")
    comps[0] = phi0.matrix
    for n in range(1, top + 1):
        rhs = f.mat_mul(comps[n - 1], P.complex.differential_matrix(n))
        phin = morphism_solve(P.complex.module_at(n), Q.complex.module_at(n),
                              [(Q.complex.differential_matrix(n), None, rhs)])
        if phin is None:
            raise ValueError(f"comparison lift failed at degree {n}")
        comps[n] = phin.matrix
    return ChainMap(P.complex, Q.complex, comps, (0, top), check=True)


def comparison_colift(fm: ModuleMorphism, I: Resolution, J: Resolution) -> ChainMap:
    """Extend a module morphism to a chain map between injective resolutions."""
    f = fm.field
    comps = {}
    bottom = max(I.complex.lo, J.complex.lo)
    psi0 = morphism_solve(I.complex.module_at(0), J.complex.module_at(0),
                          [(None, I.augmentation.matrix,
                            f.mat_mul(J.augmentation.matrix, fm.matrix))])
    if psi0 is None:
        raise ValueError("comparison colift failed at degree 0")
    comps[0] = psi0.matrix
    for n in range(-1, bottom - 1, -1):
        rhs = f.mat_mul(J.complex.differential_matrix(n + 1), comps[n + 1])
        psin = morphism_solve(I.complex.module_at(n), J.complex.module_at(n),
                              [(None, I.complex.differential_matrix(n + 1), rhs)])
        if psin is None:
            raise ValueError(f"comparison colift failed at degree {n}")
        comps[n] = psin.matrix
    return ChainMap(I.complex, J.complex, comps, (bottom, 0), check=True)


def chain_homotopy_witness(f: ChainMap, g: ChainMap, window=None):
    """Degreewise h with f - g = d h + h d on the window, or None.

    Built upward degree by degree; each step solves a factorization through
    the next differential, which succeeds exactly when the difference is
    nullhomotopic in the requested range.  Against length-N truncated
    resolutions the top degree N is not meaningful; pass a window ending at
    N - 1.
    """
    if f.source is not g.source or f.target is not g.target:
        raise ValueError("homotopy endpoints disagree")
    fld = f.field
    lo = max(f.window[0], g.window[0])
    hi = min(f.window[1], g.window[1])
    if window is not None:
        lo = max(lo, window[0])
        hi = min(hi, window[1])
    hs = {}
    prev = None
    for n in range(lo, hi + 1):
        delta = fld.normalize(f.component(n) - g.component(n))
        if prev is not None:
            delta = fld.normalize(
                delta - fld.mat_mul(prev, f.source.differential_matrix(n)))
        hn = morphism_solve(f.source.module_at(n), f.target.module_at(n + 1),
                            [(f.target.differential_matrix(n + 1), None, delta)])
        if hn is None:
            return None
        hs[n] = hn.matrix
        prev = hn.matrix
    return hs
