"""Finite-group stand-ins for cuspidal labels and the SL(2) surrogate.

The matrix oracles need honest finite sums, so every label with a model is
backed by a concrete finite group given as explicit matrices with a verified
multiplication table, and the k-dimensional SL(2) factor is replaced by the
symmetric powers of the binary icosahedral group 2I.  Those powers stay
irreducible exactly for k <= 6 (``SL2_SURROGATE_BOUND``), which is enforced,
never silently exceeded.

Built-in labels: ``trivial`` (dim 1, orthogonal), the dual character pair
``chi3``/``chi3bar`` on a shared cyclic group (dim 1, not self-dual), the
two-dimensional standard representations ``s3`` and ``d4`` (orthogonal), and
two independent quaternion models ``q8`` and ``q8b`` (symplectic).  The two
quaternion labels live on *separate* group copies so their realizations are
inequivalent, as two distinct cuspidals must be.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache, lru_cache
from math import sqrt
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    CatalogError,
    CommutantMismatchError,
    ConsistencyError,
    DimBoundExceededError,
    MissingModelError,
    MultiplicityTooHighError,
    NonIntegralIndicatorError,
    PeriodLabError,
    SurrogateBoundExceededError,
)
from .exactnum import I as QI
from .exactnum import QQi
from .matrix_lab import (
    FLOAT_TOL,
    BilinearForm,
    GeneratorSet,
    Matrix,
    nullspace_float,
    sym_power,
)
from .param_core import CuspidalLabel, SelfDualityType, Segment

SL2_SURROGATE_BOUND = 6

_CHAR_TOL = 1e-6


# ---------------------------------------------------------------------------
# finite groups


@dataclass(eq=False)
class FiniteGroup:
    """A finite matrix group with a verified multiplication table.

    ``elements[0]`` is the identity; ``table[i, j]`` is the index of
    ``elements[i] @ elements[j]``; ``generator_idxs`` index a verified
    generating set.  Identity of the group *object* matters: two labels
    share oracle factors exactly when they share the group object.
    """

    name: str
    elements: tuple[Matrix, ...]
    table: np.ndarray
    inverse_idx: np.ndarray
    square_idx: np.ndarray
    generator_idxs: tuple[int, ...]
    exact: bool

    @property
    def order(self) -> int:
        return len(self.elements)


def _element_key(m: Matrix, exact: bool):
    if exact:
        return tuple(m.data.ravel())
    return tuple(np.round(m.as_complex(), 6).ravel().tolist())


def _generate_elements(name: str, generators: Sequence[Matrix],
                       exact: bool, limit: int = 1000) -> list[Matrix]:
    """BFS closure of a generating set, identity first."""
    if not generators:
        dim = 1
    else:
        dim = generators[0].rows
    identity = Matrix.identity(dim, exact)
    elements = [identity]
    keys = {_element_key(identity, exact): 0}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for m in frontier:
            for g in generators:
                prod = m @ g
                key = _element_key(prod, exact)
                if key not in keys:
                    keys[key] = len(elements)
                    elements.append(prod)
                    new_frontier.append(prod)
                    if len(elements) > limit:
                        raise ConsistencyError(
                            f"group {name} exceeded closure limit {limit}")
        frontier = new_frontier
    return elements


def _build_group(name: str, generators: Sequence[Matrix],
                 exact: bool) -> FiniteGroup:
    elements = _generate_elements(name, generators, exact)
    n = len(elements)
    keys = {_element_key(m, exact): i for i, m in enumerate(elements)}
    if len(keys) != n:
        raise ConsistencyError(f"group {name}: duplicate elements in listing")
    table = np.empty((n, n), dtype=np.int64)
    if exact or n <= 12:
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                idx = keys.get(_element_key(a @ b, exact))
                if idx is None:
                    raise ConsistencyError(f"group {name} is not closed")
                table[i, j] = idx
    else:
        stack = np.stack([m.as_complex() for m in elements])
        products = np.einsum("aij,bjk->abik", stack, stack)
        for i in range(n):
            for j in range(n):
                key = tuple(np.round(products[i, j], 6).ravel().tolist())
                idx = keys.get(key)
                if idx is None:
                    raise ConsistencyError(f"group {name} is not closed")
                table[i, j] = idx
    inverse_idx = np.empty(n, dtype=np.int64)
    for i in range(n):
        hits = np.nonzero(table[i] == 0)[0]
        if hits.size != 1:
            raise ConsistencyError(f"group {name}: bad inverse structure")
        inverse_idx[i] = hits[0]
    square_idx = table.diagonal().copy()
    gen_idxs = tuple(keys[_element_key(g, exact)] for g in generators)
    _check_generation(name, table, gen_idxs, n)
    return FiniteGroup(name, tuple(elements), table, inverse_idx,
                       square_idx, gen_idxs, exact)


def _check_generation(name: str, table: np.ndarray,
                      gen_idxs: tuple[int, ...], order: int) -> None:
    reached = {0, *gen_idxs}
    frontier = list(reached)
    while frontier:
        nxt = []
        for i in frontier:
            for g in gen_idxs:
                j = int(table[i, g])
                if j not in reached:
                    reached.add(j)
                    nxt.append(j)
        frontier = nxt
    if len(reached) != order:
        raise ConsistencyError(
            f"group {name}: declared generators only reach "
            f"{len(reached)}/{order} elements")


# ---------------------------------------------------------------------------
# irreducible models


@dataclass(eq=False)
class IrrepModel:
    """An irreducible matrix representation of a finite group.

    ``matrices`` is indexed like ``group.elements``; ``character`` holds the
    traces as complex floats regardless of the arithmetic path.
    """

    name: str
    group: FiniteGroup
    dim: int
    matrices: tuple[Matrix, ...]
    character: np.ndarray
    exact: bool

    def stack(self) -> np.ndarray:
        return np.stack([m.as_complex() for m in self.matrices])


def commutant_dimension(mats: Sequence[Matrix], dim: int,
                        tol: float = FLOAT_TOL) -> int:
    """Dimension of {X : XA = AX for all A}, via a float null space."""
    eye = np.eye(dim, dtype=complex)
    blocks = []
    for a in mats:
        ac = a.as_complex()
        blocks.append(np.kron(eye, ac.T) - np.kron(ac, eye))
    stacked = (np.vstack(blocks) if blocks
               else np.zeros((0, dim * dim), dtype=complex))
    return nullspace_float(stacked, dim * dim, tol).shape[1]


def _make_model(name: str, group: FiniteGroup,
                matrices: Sequence[Matrix], exact: bool,
                spot_checks: int = 200) -> IrrepModel:
    n = group.order
    if len(matrices) != n:
        raise ConsistencyError(f"model {name}: need one matrix per element")
    dim = matrices[0].rows
    character = np.array([complex(m.trace()) for m in matrices])
    # homomorphism spot check against the verified table
    if n * n <= 400:
        pairs: Iterable[tuple[int, int]] = itertools.product(range(n), range(n))
    else:
        rng = np.random.default_rng(7)
        pairs = zip(rng.integers(0, n, spot_checks),
                    rng.integers(0, n, spot_checks))
    for i, j in pairs:
        lhs = matrices[int(i)] @ matrices[int(j)]
        rhs = matrices[int(group.table[int(i), int(j)])]
        if lhs.max_abs_diff(rhs) > 1e-8:
            raise ConsistencyError(
                f"model {name}: matrices do not respect the group table")
    gen_mats = [matrices[i] for i in group.generator_idxs]
    if commutant_dimension(gen_mats, dim) != 1:
        raise ConsistencyError(f"model {name} is not irreducible")
    return IrrepModel(name, group, dim, tuple(matrices), character, exact)


def fs_indicator(model: IrrepModel) -> int:
    """Frobenius-Schur indicator: (1/|G|) sum of chi(g^2), rounded.

    +1 for orthogonal, -1 for symplectic, 0 for non-self-dual irreducibles;
    a rounding gap above 1e-6 raises.
    """
    total = model.character[model.group.square_idx].sum() / model.group.order
    nearest = round(total.real)
    if abs(total - nearest) > _CHAR_TOL:
        raise NonIntegralIndicatorError(
            f"indicator of {model.name} is {total}, not near an integer")
    return int(nearest)


# ---------------------------------------------------------------------------
# built-in groups and models


def _trivial_group() -> FiniteGroup:
    return _build_group("trivial", [], exact=True)


def _cyclic3_group() -> FiniteGroup:
    omega = complex(np.exp(2j * np.pi / 3))
    gen = Matrix.from_rows([[omega]], exact=False)
    return _build_group("c3", [gen], exact=False)


def _s3_group() -> FiniteGroup:
    r = Matrix.from_rows([[0, -1], [1, -1]])
    s = Matrix.from_rows([[0, 1], [1, 0]])
    return _build_group("s3", [r, s], exact=True)


def _d4_group() -> FiniteGroup:
    r = Matrix.from_rows([[0, -1], [1, 0]])
    s = Matrix.from_rows([[1, 0], [0, -1]])
    return _build_group("d4", [r, s], exact=True)


def _q8_group(name: str) -> FiniteGroup:
    i_mat = Matrix.from_rows([[QI, QQi(0)], [QQi(0), -QI]])
    j_mat = Matrix.from_rows([[0, 1], [-1, 0]])
    return _build_group(name, [i_mat, j_mat], exact=True)


def _spin_matrix(q: tuple[float, float, float, float]) -> Matrix:
    w, x, y, z = q
    return Matrix.from_array(np.array(
        [[w + x * 1j, y + z * 1j], [-y + z * 1j, w - x * 1j]]))


@cache
def _icosian_group() -> FiniteGroup:
    """The binary icosahedral group 2I as 120 unit-quaternion spin matrices."""
    phi = (1 + sqrt(5)) / 2
    g1 = _spin_matrix((0.5, 0.5, 0.5, 0.5))
    g2 = _spin_matrix((phi / 2, 1 / (2 * phi), 0.5, 0.0))
    group = _build_group("icosian", [g1, g2], exact=False)
    if group.order != 120:
        raise ConsistencyError(
            f"binary icosahedral construction gave order {group.order}")
    return group


@cache
def _spin_model() -> IrrepModel:
    group = _icosian_group()
    return _make_model("spin", group, group.elements, exact=False)


@lru_cache(maxsize=None)
def sl2_surrogate(k: int) -> IrrepModel:
    """Sym^{k-1} of the spin model: the finite stand-in for S(k).

    Valid for 1 <= k <= ``SL2_SURROGATE_BOUND``; beyond that the power is no
    longer irreducible on 2I and the request is refused.
    """
    if k < 1 or k > SL2_SURROGATE_BOUND:
        raise SurrogateBoundExceededError(
            f"SL(2) surrogate supports 1 <= k <= {SL2_SURROGATE_BOUND}, "
            f"got {k}")
    group = _icosian_group()
    mats = [sym_power(m, k) for m in group.elements]
    return _make_model(f"spin_sym{k - 1}", group, mats, exact=False)


@cache
def _builtin_model_table() -> dict[str, IrrepModel]:
    triv_group = _trivial_group()
    c3 = _cyclic3_group()
    s3 = _s3_group()
    d4 = _d4_group()
    q8a = _q8_group("q8")
    q8b = _q8_group("q8b")
    chi3 = _make_model("chi3", c3, c3.elements, exact=False)
    chi3bar = _make_model("chi3bar", c3,
                          [m.conj() for m in c3.elements], exact=False)
    return {
        "trivial": _make_model("trivial", triv_group, triv_group.elements,
                               exact=True),
        "chi3": chi3,
        "chi3bar": chi3bar,
        "s3": _make_model("s3", s3, s3.elements, exact=True),
        "d4": _make_model("d4", d4, d4.elements, exact=True),
        "q8": _make_model("q8", q8a, q8a.elements, exact=True),
        "q8b": _make_model("q8b", q8b, q8b.elements, exact=True),
    }


def builtin_models() -> dict[str, IrrepModel]:
    """The registry of model ids usable in catalog files."""
    return dict(_builtin_model_table())


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class CatalogEntry:
    label: CuspidalLabel
    model: IrrepModel | None


@dataclass(frozen=True)
class Catalog:
    """Named cuspidal labels with optional matrix models."""

    entries: dict[str, CatalogEntry]
    sl2_surrogate_bound: int = SL2_SURROGATE_BOUND

    def label(self, name: str) -> CuspidalLabel:
        entry = self.entries.get(name)
        if entry is None:
            raise CatalogError(f"unknown cuspidal label {name!r}")
        return entry.label

    def model_for(self, label: CuspidalLabel) -> IrrepModel:
        entry = self.entries.get(label.name)
        if entry is None:
            raise CatalogError(f"unknown cuspidal label {label.name!r}")
        if entry.label != label:
            raise CatalogError(
                f"label {label.name!r} does not match this catalog's entry")
        if entry.model is None:
            raise MissingModelError(
                f"label {label.name!r} has no finite-group model")
        return entry.model

    def dual_of(self, label: CuspidalLabel) -> CuspidalLabel:
        return self.label(label.dual_name)

    def labels(self) -> list[CuspidalLabel]:
        return [e.label for e in self.entries.values()]

    def validate(self) -> None:
        """Check duality mutuality and model consistency; raise on failure."""
        seen_models: dict[int, str] = {}
        for name, entry in self.entries.items():
            label = entry.label
            if label.name != name:
                raise ConsistencyError(
                    f"entry key {name!r} does not match label {label.name!r}")
            dual_entry = self.entries.get(label.dual_name)
            if dual_entry is None:
                raise ConsistencyError(
                    f"label {name!r} declares unknown dual "
                    f"{label.dual_name!r}")
            dual = dual_entry.label
            if dual.dual_name != name:
                raise ConsistencyError(
                    f"labels {name!r} and {dual.name!r} are not mutually dual")
            if dual.dim != label.dim:
                raise ConsistencyError(
                    f"dual labels {name!r}/{dual.name!r} differ in dimension")
            if (label.sd_type is SelfDualityType.NOT_SELF_DUAL) != (
                    dual.sd_type is SelfDualityType.NOT_SELF_DUAL):
                raise ConsistencyError(
                    f"dual labels {name!r}/{dual.name!r} disagree about "
                    f"self-duality")
            if entry.model is not None:
                if entry.model.dim != label.dim:
                    raise ConsistencyError(
                        f"label {name!r} has dim {label.dim} but its model "
                        f"has dim {entry.model.dim}")
                indicator = fs_indicator(entry.model)
                if indicator != label.sd_type.sign:
                    raise ConsistencyError(
                        f"label {name!r}: declared type {label.sd_type.value} "
                        f"(sign {label.sd_type.sign}) but the model indicator "
                        f"is {indicator}")
                owner = seen_models.get(id(entry.model))
                if owner is not None:
                    raise ConsistencyError(
                        f"labels {owner!r} and {name!r} share one model; "
                        f"distinct labels need distinct models")
                seen_models[id(entry.model)] = name


@cache
def builtin_catalog() -> Catalog:
    """The built-in catalog; validated once and cached."""
    models = _builtin_model_table()
    sd = SelfDualityType
    labels = [
        CuspidalLabel("trivial", 1, sd.ORTHOGONAL, model="trivial"),
        CuspidalLabel("chi3", 1, sd.NOT_SELF_DUAL, dual_name="chi3bar",
                      model="chi3"),
        CuspidalLabel("chi3bar", 1, sd.NOT_SELF_DUAL, dual_name="chi3",
                      model="chi3bar"),
        CuspidalLabel("s3", 2, sd.ORTHOGONAL, model="s3"),
        CuspidalLabel("d4", 2, sd.ORTHOGONAL, model="d4"),
        CuspidalLabel("q8", 2, sd.SYMPLECTIC, model="q8"),
        CuspidalLabel("q8b", 2, sd.SYMPLECTIC, model="q8b"),
    ]
    entries = {
        label.name: CatalogEntry(label, models[label.model])
        for label in labels
    }
    catalog = Catalog(entries)
    catalog.validate()
    return catalog


# ---------------------------------------------------------------------------
# isotypic structure of realized parameters


class _OracleContext:
    """Factorized character data for the product group behind a realization.

    The realized group is a product: one factor per distinct model group,
    plus the icosian surrogate standing in for the SL(2) factor.  Characters
    of both the realized blocks and the candidate irreducible classes
    factor over this product, so all inner products are small per-factor
    sums.
    """

    def __init__(self, gens: GeneratorSet):
        if gens.recipe is None:
            raise ValueError(
                "generator set carries no realization recipe; build it "
                "with realize()")
        recipe = gens.recipe
        self.gens = gens
        self.segments = recipe.segments
        self.spans = recipe.spans
        self.catalog = recipe.catalog
        self.models = [self.catalog.model_for(s.cuspidal)
                       for s in self.segments]
        self.icosian = _icosian_group()
        bound = getattr(self.catalog, "sl2_surrogate_bound",
                        SL2_SURROGATE_BOUND)
        for s in self.segments:
            if s.k > bound:
                raise SurrogateBoundExceededError(
                    f"segment St({s.k},{s.cuspidal.name}) exceeds the "
                    f"SL(2) surrogate bound {bound}")
        self.surrogates = {s.k: sl2_surrogate(s.k) for s in self.segments}
        self.factors: list[FiniteGroup] = []
        for m in self.models:
            if m.group is self.icosian:
                raise ConsistencyError(
                    "label models may not reuse the SL(2) surrogate group")
            if not any(f is m.group for f in self.factors):
                self.factors.append(m.group)
        # class representatives: distinct (label, k) in canonical order
        self.classes: list[tuple[Segment, IrrepModel]] = []
        seen = set()
        for seg, model in zip(self.segments, self.models):
            key = (seg.cuspidal.name, seg.k)
            if key not in seen:
                seen.add(key)
                self.classes.append((seg, model))
        self.class_ids = [f"{seg.cuspidal.name}⊗S({seg.k})"
                          for seg, _ in self.classes]

    # -- factorized characters -------------------------------------------
    def _factor_chars(self, seg: Segment, model: IrrepModel) -> list[np.ndarray]:
        chars = []
        for f in self.factors:
            if f is model.group:
                chars.append(model.character)
            else:
                chars.append(np.ones(f.order, dtype=complex))
        chars.append(self.surrogates[seg.k].character)
        return chars

    def multiplicity(self, class_index: int) -> int:
        cseg, cmodel = self.classes[class_index]
        cchars = self._factor_chars(cseg, cmodel)
        total = 0.0 + 0j
        for seg, model in zip(self.segments, self.models):
            schars = self._factor_chars(seg, model)
            term = 1.0 + 0j
            for a, b in zip(schars, cchars):
                term *= np.mean(a * b.conj())
            total += term
        nearest = round(total.real)
        if abs(total - nearest) > _CHAR_TOL or nearest < 0:
            raise NonIntegralIndicatorError(
                f"multiplicity of {self.class_ids[class_index]} came out "
                f"as {total}")
        return int(nearest)

    def multiplicities(self) -> list[tuple[str, int]]:
        out = [(cid, self.multiplicity(i))
               for i, cid in enumerate(self.class_ids)]
        dim_total = sum(
            mult * cseg.dim
            for (cseg, _), (_, mult) in zip(self.classes, out))
        if dim_total != self.gens.dim:
            raise CommutantMismatchError(
                f"isotypic dimensions sum to {dim_total}, expected "
                f"{self.gens.dim}")
        commutant = commutant_dimension(self.gens.generators, self.gens.dim)
        expected = sum(mult * mult for _, mult in out)
        if commutant != expected:
            raise CommutantMismatchError(
                f"commutant dimension {commutant} disagrees with character "
                f"count {expected}")
        return out

    def projector(self, class_index: int) -> np.ndarray:
        """Isotypic projector for a class, verified to be one."""
        cseg, cmodel = self.classes[class_index]
        n = self.gens.dim
        proj = np.zeros((n, n), dtype=complex)
        csur = self.surrogates[cseg.k]
        for seg, model, (lo, hi) in zip(self.segments, self.models,
                                        self.spans):
            if model.group is not cmodel.group:
                # the class character is nontrivial on its own group factor,
                # which acts trivially here: the average over that factor
                # vanishes, so this block contributes zero
                continue
            g_part = (cmodel.dim / cmodel.group.order) * np.einsum(
                "g,gij->ij", cmodel.character.conj(), model.stack())
            ssur = self.surrogates[seg.k]
            s_part = (csur.dim / self.icosian.order) * np.einsum(
                "g,gij->ij", csur.character.conj(), ssur.stack())
            proj[lo:hi, lo:hi] = np.kron(g_part, s_part)
        if np.abs(proj @ proj - proj).max() > 1e-7:
            raise CommutantMismatchError(
                f"projector for {self.class_ids[class_index]} is not "
                f"idempotent")
        for g in self.gens.generators:
            gc = g.as_complex()
            if np.abs(gc @ proj - proj @ gc).max() > 1e-7:
                raise CommutantMismatchError(
                    f"projector for {self.class_ids[class_index]} does not "
                    f"commute with the generators")
        return proj

    def component_spans(self, class_index: int) -> list[tuple[int, int]]:
        cseg, _ = self.classes[class_index]
        key = (cseg.cuspidal.name, cseg.k)
        return [span for seg, span in zip(self.segments, self.spans)
                if (seg.cuspidal.name, seg.k) == key]


def isotypic_multiplicities(gens: GeneratorSet) -> list[tuple[str, int]]:
    """Multiplicities of the distinct irreducible classes of a realization.

    Computed by factorized character inner products over the finite product
    group behind the realization and cross-checked against the numeric
    commutant dimension (which must equal the sum of squares).
    """
    return _OracleContext(gens).multiplicities()


def invariant_isotropic_exists(gens: GeneratorSet,
                               j: Union[BilinearForm, Matrix],
                               dim_bound: int = 12,
                               tol: float = FLOAT_TOL) -> bool:
    """Whether a nonzero invariant J-isotropic subspace exists.

    ``j`` must be skew, nondegenerate, and invariant under the generators.
    The search is structural and fully verified: isotypic projectors are
    computed and checked, then (a) every union of isotypic components is
    tested for isotropy directly, and (b) inside each multiplicity-2
    component the irreducible graph submodules are parameterized by a
    projective scalar and the (at most quadratic) isotropy equation is
    solved and re-verified on the candidate subspace.  Multiplicities above
    two are refused.
    """
    gram = j.gram if isinstance(j, BilinearForm) else j
    n = gens.dim
    if n > dim_bound:
        raise DimBoundExceededError(
            f"isotropy search bound is {dim_bound}, parameter has "
            f"dimension {n}")
    jc = gram.as_complex()
    if jc.shape != (n, n):
        raise ValueError("form size does not match the generator set")
    scale = max(1.0, float(np.abs(jc).max()))
    if np.abs(jc + jc.T).max() > tol * scale:
        raise ValueError("the form must be skew-symmetric")
    if Matrix.from_array(jc).rank(tol) != n:
        raise ValueError("the form must be nondegenerate")
    for g in gens.generators:
        gc = g.as_complex()
        if np.abs(gc.T @ jc @ gc - jc).max() > tol * scale:
            raise ValueError("the form must be invariant under the generators")

    ctx = _OracleContext(gens)
    mults = ctx.multiplicities()
    for cid, mult in mults:
        if mult > 2:
            raise MultiplicityTooHighError(
                f"component {cid} has multiplicity {mult}; the isotropy "
                f"search handles at most 2")
    for i in range(len(ctx.classes)):
        ctx.projector(i)  # verified structural decomposition

    iso_tol = tol * scale
    comp_spans = [ctx.component_spans(i) for i in range(len(ctx.classes))]

    # (a) unions of full isotypic components
    indices = range(len(comp_spans))
    for size in range(1, len(comp_spans) + 1):
        for subset in itertools.combinations(indices, size):
            cols = np.concatenate([
                np.arange(lo, hi) for i in subset for (lo, hi) in comp_spans[i]
            ])
            sub = jc[np.ix_(cols, cols)]
            if np.abs(sub).max() <= iso_tol:
                return True

    # (b) graphs inside multiplicity-2 components
    for i, spans in enumerate(comp_spans):
        if len(spans) != 2:
            continue
        if _isotropic_graph_exists(jc, spans[0], spans[1], iso_tol):
            return True
    return False


def _isotropic_graph_exists(jc: np.ndarray, span1: tuple[int, int],
                            span2: tuple[int, int], iso_tol: float) -> bool:
    """Solve for a*iota1 + b*iota2 with isotropic image, then verify it.

    The two copies are identical matrix representations (same model, same
    basis), so the identity map is a valid intertwiner and every irreducible
    submodule of the component is such a graph.  The pairing blocks are
    scalar multiples of one invariant pairing, making the isotropy condition
    a single homogeneous quadratic in (a : b).
    """
    r1 = np.arange(*span1)
    r2 = np.arange(*span2)
    b11 = jc[np.ix_(r1, r1)]
    b12 = jc[np.ix_(r1, r2)]
    b21 = jc[np.ix_(r2, r1)]
    b22 = jc[np.ix_(r2, r2)]
    cross = b12 + b21
    profile = np.abs(b11) + np.abs(cross) + np.abs(b22)
    p, q = np.unravel_index(int(profile.argmax()), profile.shape)
    alpha, beta, gamma = b11[p, q], cross[p, q], b22[p, q]

    candidates: list[tuple[complex, complex]] = []
    if abs(alpha) <= iso_tol:
        candidates.append((1.0 + 0j, 0.0 + 0j))
    if abs(gamma) <= iso_tol:
        candidates.append((0.0 + 0j, 1.0 + 0j))
    coeffs = [alpha, beta, gamma]
    # roots of alpha t^2 + beta t + gamma, t = a/b
    if abs(alpha) > iso_tol:
        for t in np.roots(coeffs):
            candidates.append((complex(t), 1.0 + 0j))
    elif abs(beta) > iso_tol:
        candidates.append((complex(-gamma / beta), 1.0 + 0j))

    for a, b in candidates:
        norm = max(abs(a), abs(b))
        if norm == 0:
            continue
        a, b = a / norm, b / norm
        residue = (a * a * b11 + a * b * cross + b * b * b22)
        if np.abs(residue).max() <= 10 * iso_tol:
            return True
    raise PeriodLabError(
        "internal: a multiplicity-2 component admitted no isotropic graph, "
        "contradicting the pairing structure")
