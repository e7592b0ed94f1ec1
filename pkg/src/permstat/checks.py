# Copyright 2020 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""The verification catalogue.

Each check compares two independently computed sides and returns a
CheckReport; a mathematical mismatch is a failing report, never an exception.
Closed forms and bijections are looked up on their modules at call time.
"""
import collections
import dataclasses
import itertools
import json
import time
from types import MappingProxyType
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
)
from absl import logging
from permstat import bijections
from permstat import dyck
from permstat import oracle
from permstat import series_forms
from permstat.permutations import (
    Pattern,
    excedance_structure_holds,
    inverse,
    perm_stats,
)
from permstat.series import (
    Monomial,
    Series,
    Window,
    compare,
    diagonal_product,
    set_value,
    substitute,
)
from permstat.stat_meta import ntos


# finite v and y bounds move out this far when a check recomputes for stability
WIDEN_BY = 2


class Failure(NamedTuple):
    counterexample: str
    left: str
    right: str


@dataclasses.dataclass(frozen=True)
class CheckReport:
    check_id: str
    parameters: Mapping[str, Any]
    verdict: str
    counterexample: Optional[str] = None
    left: Optional[str] = None
    right: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def tojson(self) -> str:
        return json.dumps(
            {
                "check_id": self.check_id,
                "parameters": dict(self.parameters),
                "verdict": self.verdict,
                "counterexample": self.counterexample,
                "left": self.left,
                "right": self.right,
            },
            indent=2,
        )

    def tostring(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{self.check_id} {params}: {self.verdict.upper()}"
        if self.counterexample is not None:
            line += f"\n  at {self.counterexample}: {self.left} vs {self.right}"
        return line


def _catalan_number(n: int) -> int:
    # C_{k+1} = C_k * 2(2k + 1) / (k + 2), exact in integers
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def _series_failure(
    what: str, left: Series, right: Series, region=None
) -> Optional[Failure]:
    mismatch = compare(left, right, region)
    if mismatch is None:
        return None
    return Failure(
        f"{what} {mismatch.monomial.tostring()}",
        ntos(mismatch.left),
        ntos(mismatch.right),
    )


def _first(failures: Iterable[Optional[Failure]]) -> Optional[Failure]:
    for failure in failures:
        if failure is not None:
            return failure
    return None


def _equal(what: str, left, right) -> Optional[Failure]:
    if left == right:
        return None
    return Failure(what, str(left), str(right))


def _nonnegative_integral(what: str, s: Series) -> Optional[Failure]:
    if s.has_nonnegative_integer_coefficients():
        return None
    for m, c in sorted(s.terms.items()):
        if not isinstance(c, int) or c < 0:
            return Failure(f"{what} {m.tostring()}", ntos(c), "a nonnegative integer")
    return None


def theorem_main(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        left = oracle.distribution("avoid_321", m, ("fp", "exc"))
        right = oracle.distribution("avoid_132", m, ("fp", "exc"))
        for key in sorted(set(left.entries) | set(right.entries)):
            a, b = left.entries.get(key, 0), right.entries.get(key, 0)
            if a != b:
                return Failure(f"n={m} (fp,exc)={key}", str(a), str(b))
    return None


def catalan_counts(n: int) -> Optional[Failure]:
    for sigma in itertools.permutations((1, 2, 3)):
        pattern = Pattern(sigma)
        for m in range(n + 1):
            count = sum(1 for _ in oracle.avoiders(pattern, m))
            if count != _catalan_number(m):
                expected = str(_catalan_number(m))
                return Failure(f"|S_{m}({pattern})|", str(count), expected)
    # two independent 321 filters must select the same permutations
    for m in range(n + 1):
        by_pattern = set(oracle.enumerate_class("avoid_321", m))
        by_structure = {
            pi
            for pi in oracle.enumerate_class("all_perms", m)
            if excedance_structure_holds(pi)
        }
        if by_pattern != by_structure:
            witness = min((by_pattern ^ by_structure), key=lambda p: p.values)
            return Failure(
                f"321 filters at n={m} disagree on {witness}",
                str(witness in by_pattern),
                str(witness in by_structure),
            )
    return None


def _injective(name: str, m: int, images: List[dyck.DyckPath]) -> Optional[Failure]:
    distinct = len(set(images))
    if distinct != len(images):
        return Failure(
            f"{name} on n={m}", f"{distinct} distinct paths", str(len(images))
        )
    if len(images) != _catalan_number(m):
        expected = str(_catalan_number(m))
        return Failure(f"{name} on n={m}", f"{len(images)} paths", expected)
    return None


def transport_rs(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        images = []
        for pi in oracle.enumerate_class("avoid_321", m):
            d = bijections.rs(pi)
            images.append(d)
            stats = perm_stats(pi)
            shape = dyck.path_stats(d)
            uud = dyck.count_factor(d, "uud")
            via_minima = bijections.rs_via_minima(pi)
            via_staircase = bijections.staircase_bijection(pi, "rs")
            failure = _first(
                (
                    _equal(f"fp/hills of {pi}", stats.fp, shape.hills),
                    _equal(f"exc/double rises of {pi}", stats.exc, shape.double_rises),
                    _equal(f"des/uud of {pi}", stats.des, uud),
                    _equal(f"rs_via_minima({pi})", str(via_minima), str(d)),
                    _equal(f"staircase rs({pi})", str(via_staircase), str(d)),
                    _equal(f"rs_inverse({d})", str(bijections.rs_inverse(d)), str(pi)),
                )
            )
            if failure:
                return failure
        failure = _injective("rs", m, images)
        if failure:
            return failure
    return None


def transport_krat(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        images = []
        for pi in oracle.enumerate_class("avoid_132", m):
            d = bijections.krat(pi)
            images.append(d)
            stats = perm_stats(pi)
            tunnels = dyck.tunnel_stats(d)
            via_staircase = bijections.staircase_bijection(pi, "krat")
            back = bijections.krat_inverse(d)
            failure = _first(
                (
                    _equal(f"fp/centered tunnels of {pi}", stats.fp, tunnels.ct_r),
                    _equal(f"exc/left tunnels of {pi}", stats.exc, tunnels.lt_r),
                    _equal(f"staircase krat({pi})", str(via_staircase), str(d)),
                    _equal(f"krat_inverse({d})", str(back), str(pi)),
                )
            )
            if failure:
                return failure
        failure = _injective("krat", m, images)
        if failure:
            return failure
    return None


def transport_bjs(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        images, images4 = [], []
        for pi in oracle.enumerate_class("avoid_321", m):
            d = bijections.bjs(pi)
            d4 = bijections.bij4(pi)
            images.append(d)
            images4.append(d4)
            exc, valleys = perm_stats(pi).exc, dyck.path_stats(d).valleys
            back, back4 = bijections.bjs_inverse(d), bijections.bij4_inverse(d4)
            failure = _first(
                (
                    _equal(f"exc/valleys of {pi}", exc, valleys),
                    _equal(f"bjs_inverse({d})", str(back), str(pi)),
                    _equal(f"bij4({pi})", str(d4), str(bijections.bjs(inverse(pi)))),
                    _equal(f"bij4_inverse({d4})", str(back4), str(pi)),
                )
            )
            if failure:
                return failure
        failure = _injective("bjs", m, images) or _injective("bij4", m, images4)
        if failure:
            return failure
    return None


def transport_kra(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        images = []
        for pi in oracle.enumerate_class("avoid_321", m):
            d = bijections.kra(pi)
            images.append(d)
            stats = perm_stats(pi)
            shape = dyck.path_stats(d)
            rs_of_inverse = bijections.rs(inverse(pi))
            back = bijections.kra_inverse(d)
            failure = _first(
                (
                    _equal(f"fp/hills of {pi}", stats.fp, shape.hills),
                    _equal(f"exc/high peaks of {pi}", stats.exc, shape.peaks_ge2),
                    _equal(f"kra({pi}) vs rs of inverse", str(d), str(rs_of_inverse)),
                    _equal(f"kra_inverse({d})", str(back), str(pi)),
                )
            )
            if failure:
                return failure
        failure = _injective("kra", m, images)
        if failure:
            return failure
    return None


def _perm_gf_matches(cls: str, stats, closed: Series, order: int) -> Optional[Failure]:
    expected = oracle.distribution_series(cls, order, stats)
    return _first(
        (
            _series_failure(
                "coefficient of", closed.within(Window.of(t=order)), expected
            ),
            _nonnegative_integral("coefficient of", closed),
        )
    )


def f321_matches_oracle(order: int) -> Optional[Failure]:
    return _perm_gf_matches("avoid_321", ("fp", "exc"), series_forms.f321(order), order)


def f321_des_matches_oracle(order: int) -> Optional[Failure]:
    return _perm_gf_matches(
        "avoid_321", ("fp", "exc", "des"), series_forms.f321_des(order), order
    )


def f132x_matches_oracle(order: int) -> Optional[Failure]:
    return _perm_gf_matches("avoid_132", ("fp",), series_forms.f132_x(order), order)


def _t() -> Series:
    return Series.variable("t")


def functional_eq(order: int) -> Optional[Failure]:
    """F = 1 + t (x + q (F(1,q,t) - 1)) F, and F(1,q,t) agrees with F at x=1."""
    f = series_forms.f321(order)
    f1 = series_forms.f321_q(order)
    x, q = Series.variable("x"), Series.variable("q")
    rhs = 1 + _t() * (x + q * (f1 - 1)) * f
    return _first(
        (
            _series_failure("residual at", f, rhs.truncate(Window.of(t=order))),
            _series_failure("F(1,q,t) at", f1, set_value(f, "x", 1)),
        )
    )


def f132x_functional_eq(order: int) -> Optional[Failure]:
    """F132(x,1,t) = C + (x - 1) t C F132(x,1,t)."""
    f = series_forms.f132_x(order)
    c = series_forms.catalan(order)
    rhs = c + (Series.variable("x") - 1) * _t() * c * f
    return _series_failure("residual at", f, rhs.truncate(Window.of(t=order)))


def _closed(name: str, window: Window) -> Series:
    # checks pick their own orders, past the interactive ceiling if asked
    grading = series_forms.CLOSED_FORMS[name].grading
    return series_forms.closed_form(name, window, max_order=window.bound(grading))


def _stable(
    what: str, name: str, window: Window, region: Optional[Window] = None
) -> Optional[Failure]:
    """The closed form agrees with its recomputation on a widened window."""
    wider = window.widen(WIDEN_BY)
    return _series_failure(
        f"{what} widened window at",
        _closed(name, window),
        _closed(name, wider),
        region,
    )


def _matches_oracle(
    what: str, name: str, window: Window, region: Optional[Window] = None
) -> Iterator[Optional[Failure]]:
    yield _stable(what, name, window, region)
    closed = _closed(name, window)
    yield _series_failure(f"{what} at", closed, oracle.gf_oracle(what, window), region)


def g_matches_oracle(order: int, v_max: int) -> Optional[Failure]:
    window = Window.of(t=order, v=v_max)
    return _first(
        itertools.chain(
            _matches_oracle("G", "g_conj", window),
            [_nonnegative_integral("coefficient of", _closed("g_conj", window))],
        )
    )


def g_at_v0(order: int) -> Optional[Failure]:
    g0 = set_value(series_forms.g_conj(order, 0), "v", 0)
    return _series_failure("coefficient of", g0, series_forms.f321(order))


def dual_identity(order: int, v_max: int) -> Optional[Failure]:
    window = Window.of(t=order, v=v_max)
    return _first(_matches_oracle("G_dual", "g_dual", window))


def trivial1_identity(order: int, v_max: int) -> Optional[Failure]:
    window = Window.of(t=order, v=v_max)
    return _first(_matches_oracle("G_tail", "g_tail", window))


def h_formulas(order: int, v_min: int, v_max: int) -> Optional[Failure]:
    region = Window.of(v=(v_min, v_max), y=(v_min, v_max))
    forms = (
        ("H1", "h1", Window.of(t=order, v=(v_min, v_max))),
        ("H2", "h2", Window.of(t=order, v=(v_min, v_max))),
        ("H3", "h3", Window.of(z=order, y=(v_min, v_max))),
    )
    return _first(
        itertools.chain.from_iterable(
            _matches_oracle(what, name, window, region)
            for what, name, window in forms
        )
    )


def _lemma_sides(window: Window, source: str):
    order, v_max, y_max = window.bound("t"), window.bound("v"), window.bound("y")
    if source == "closed":
        h1 = series_forms.h1(order, v_max)
        h2 = series_forms.h2(order, v_max)
        h3 = series_forms.h3(order, y_max)
    elif source == "oracle":
        window = Window.of(t=order, v=v_max)
        h1 = oracle.gf_oracle("H1", window)
        h2 = oracle.gf_oracle("H2", window)
        h3 = oracle.gf_oracle("H3", Window.of(z=order, y=y_max))
    else:
        raise ValueError(f"Unknown lemma source {source!r}")
    h1 = substitute(h1, {"v": Monomial.of(v=1, y=-1)})
    h2 = substitute(h2, {"t": Monomial.of(t=1, y=1)})
    diag = diagonal_product(h1, h2, ("v", "t"), "z")
    return h1, h2, diag.within(Window.of(z=order)), h3


def lemma_diag(
    order: int, y_min: int, y_max: int, v_min: int, v_max: int, source: str
) -> Optional[Failure]:
    """diag H1(x,q,t,v/y) H2(x,q,ty,v) = H3(x,q,z,y) on the y-window."""
    region = Window.of(y=(y_min, y_max))
    window = Window.of(t=order, v=(v_min, v_max), y=(y_min, y_max))
    h1, h2, diag, h3 = _lemma_sides(window, source)
    for name, s in (("H1", h1), ("H2", h2)):
        lowest = s.min_exponent("v")
        if lowest is not None and lowest < v_min:
            raise ValueError(f"{name} reaches v^{lowest}, below the v-window {v_min}")
    # v and y move out on both sides; comparisons stay on the y-window
    _, _, wide_diag, wide_h3 = _lemma_sides(window.widen(WIDEN_BY), source)
    return _first(
        (
            _series_failure("coefficient of", diag, h3, region),
            _series_failure("widened diagonal at", diag, wide_diag, region),
            _series_failure("widened H3 at", h3, wide_h3, region),
        )
    )


def involutions(n: int) -> Optional[Failure]:
    for m in range(n + 1):
        va_dr: collections.Counter = collections.Counter()
        dr_p2: collections.Counter = collections.Counter()
        for d in oracle.enumerate_paths(m):
            shape = dyck.path_stats(d)
            va_dr[(shape.valleys, shape.double_rises)] += 1
            dr_p2[(shape.double_rises, shape.peaks_ge2)] += 1
            a = bijections.involution(d, "va_dr")
            b = bijections.involution(d, "dr_p2")
            shape_a, shape_b = dyck.path_stats(a), dyck.path_stats(b)
            aa = bijections.involution(a, "va_dr")
            bb = bijections.involution(b, "dr_p2")
            failure = _first(
                (
                    _equal(f"va_dr twice on {d}", str(aa), str(d)),
                    _equal(f"dr_p2 twice on {d}", str(bb), str(d)),
                    _equal(f"va of va_dr({d})", shape_a.valleys, shape.double_rises),
                    _equal(f"dr of va_dr({d})", shape_a.double_rises, shape.valleys),
                    _equal(f"dr of dr_p2({d})", shape_b.double_rises, shape.peaks_ge2),
                    _equal(f"p2 of dr_p2({d})", shape_b.peaks_ge2, shape.double_rises),
                    _equal(f"hills of dr_p2({d})", shape_b.hills, shape.hills),
                )
            )
            if failure:
                return failure
        for name, counts in (("(va,dr)", va_dr), ("(dr,p2)", dr_p2)):
            for (a, b), count in sorted(counts.items()):
                if counts.get((b, a), 0) != count:
                    return Failure(
                        f"{name} distribution at n={m}, {(a, b)}",
                        str(count),
                        str(counts.get((b, a), 0)),
                    )
    return None


def weak_exc_shift(n: int) -> Optional[Failure]:
    for cls in ("avoid_321", "avoid_132"):
        for m in range(1, n + 1):
            exc: collections.Counter = collections.Counter()
            wexc: collections.Counter = collections.Counter()
            for pi in oracle.enumerate_class(cls, m):
                stats = perm_stats(pi)
                exc[stats.exc] += 1
                wexc[stats.wexc] += 1
                if cls == "avoid_321":
                    image = bijections.weak_excedance_map(pi)
                    failure = _equal(
                        f"wexc of the image of {pi}",
                        perm_stats(image).wexc,
                        stats.exc + 1,
                    )
                    if failure:
                        return failure
            for k in range(m + 1):
                if exc[k] != wexc[k + 1]:
                    return Failure(
                        f"{cls} n={m}: #exc={k} vs #wexc={k + 1}",
                        str(exc[k]),
                        str(wexc[k + 1]),
                    )
    return None


class Check(NamedTuple):
    run: Callable[..., Optional[Failure]]
    defaults: Mapping[str, Any]


# makes dict read-only
CHECKS = MappingProxyType(
    {
        "theorem_main": Check(theorem_main, {"n": 9}),
        "catalan_counts": Check(catalan_counts, {"n": 9}),
        "transport_rs": Check(transport_rs, {"n": 9}),
        "transport_krat": Check(transport_krat, {"n": 9}),
        "transport_bjs": Check(transport_bjs, {"n": 9}),
        "transport_kra": Check(transport_kra, {"n": 9}),
        "f321_matches_oracle": Check(f321_matches_oracle, {"order": 9}),
        "f321_des_matches_oracle": Check(f321_des_matches_oracle, {"order": 8}),
        "f132x_matches_oracle": Check(f132x_matches_oracle, {"order": 9}),
        "f132x_functional_eq": Check(f132x_functional_eq, {"order": 12}),
        "functional_eq": Check(functional_eq, {"order": 12}),
        "g_matches_oracle": Check(g_matches_oracle, {"order": 7, "v_max": 9}),
        "g_at_v0": Check(g_at_v0, {"order": 12}),
        "dual_identity": Check(dual_identity, {"order": 7, "v_max": 9}),
        "trivial1_identity": Check(trivial1_identity, {"order": 7, "v_max": 9}),
        "h_formulas": Check(h_formulas, {"order": 6, "v_min": -8, "v_max": 8}),
        "lemma_diag": Check(
            lemma_diag,
            {
                "order": 6,
                "y_min": -6,
                "y_max": 6,
                "v_min": -8,
                "v_max": 14,
                "source": "closed",
            },
        ),
        "involutions": Check(involutions, {"n": 10}),
        "weak_exc_shift": Check(weak_exc_shift, {"n": 9}),
    }
)

# What "verify --all" runs: every check at its defaults, plus the lemma on
# the definitional sums
CATALOGUE = tuple((check_id, {}) for check_id in CHECKS) + (
    ("lemma_diag", {"source": "oracle"}),
)


def parameters_for(check_id: str, **overrides) -> Dict[str, Any]:
    try:
        check = CHECKS[check_id]
    except KeyError:
        raise ValueError(f"Unknown check {check_id!r}")
    params = dict(check.defaults)
    for key, value in overrides.items():
        if key not in params:
            raise ValueError(f"Check {check_id!r} has no parameter {key!r}")
        params[key] = value
    return params


def run_check(check_id: str, **overrides) -> CheckReport:
    params = parameters_for(check_id, **overrides)
    logging.info("Running %s %s", check_id, params)
    start = time.perf_counter()
    failure = CHECKS[check_id].run(**params)
    elapsed = time.perf_counter() - start
    logging.info(
        "%s %s in %.1fs", check_id, "failed" if failure else "passed", elapsed
    )
    if failure is None:
        return CheckReport(check_id, params, "pass", seconds=elapsed)
    return CheckReport(
        check_id,
        params,
        "fail",
        counterexample=failure.counterexample,
        left=failure.left,
        right=failure.right,
        seconds=elapsed,
    )


def run_all(**overrides) -> List[CheckReport]:
    """Run the catalogue; overrides apply to every check that has that parameter."""
    reports = []
    for check_id, extra in CATALOGUE:
        params = dict(extra)
        defaults = CHECKS[check_id].defaults
        params.update({k: v for k, v in overrides.items() if k in defaults})
        reports.append(run_check(check_id, **params))
    return reports
