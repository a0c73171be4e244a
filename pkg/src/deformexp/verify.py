"""Identity registry and grid-based verification harness.

Each registered identity evaluates both sides of one relation at sampled
points and reports the worst discrepancy.  The governing error is the
mixed measure ``|lhs - rhs| / max(1, |rhs|)`` unless the identity says
otherwise.  Reports are plain data; rendering is the CLI's job.
"""

from __future__ import annotations

import fnmatch
import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import defarith as da
from . import defcalc as dc
from . import defexp as de
from . import diffops as do
from . import genpow as gp
from . import series as se
from .errors import EmptyGridError, UnknownIdentityError

__all__ = [
    "GridSpec",
    "Identity",
    "IdentityReport",
    "REGISTRY",
    "identity_ids",
    "select",
    "run_identity",
    "run_all",
]

Point = dict

H_DEFORMED = (0.1, -0.1, 0.5, -0.5, 1.0, -1.0)
H_WITH_ZERO = H_DEFORMED + (0.0,)
H_LIMIT = (0.1, -0.1, 0.01, -0.01)
INT_VARS = frozenset({"n", "m"})

ALGEBRAIC = 1e-12
PRODUCT = 1e-11
EXACT = 1e-14
EXPANSION = 1e-10
FINITE_DIFF = 1e-6
# observed order of convergence is accepted within a factor 2 of the nominal ratio
ORDER = math.log10(2.0)
POLE_MARGIN = 1e-3


@dataclass(frozen=True)
class GridSpec:
    """How to sample points for an identity.

    ``ranges`` overrides the identity's default range for any variable it
    uses; ``h_values`` (if given) replaces its default deformation values.
    Integer variables (``n``, ``m``) take inclusive integer ranges.
    """

    ranges: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    h_values: tuple[float, ...] | None = None
    samples: int = 50
    mode: str = "random"
    seed: int = 42
    attempts_per_sample: int = 50

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.mode not in ("random", "uniform"):
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        for name, (lo, hi) in self.ranges.items():
            if not lo <= hi:
                raise ValueError(f"range for {name!r} has lo > hi")


@dataclass(frozen=True)
class Identity:
    id: str
    formula: str
    variables: Mapping[str, tuple[float, float]]
    evaluate: Callable[[Point], tuple[float, float]]
    guard: Callable[[Point], bool] = lambda p: True
    tolerance: float = ALGEBRAIC
    h_values: tuple[float, ...] = H_DEFORMED
    measure: str = "mixed"


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    formula: str
    grid_spec: str
    samples: int
    skipped: int
    max_abs_err: float
    max_rel_err: float
    max_err: float
    tolerance: float
    passed: bool
    worst_point: dict

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d


# ---------------------------------------------------------------- helpers

def _in_sub(x, h):
    return 1.0 + h * x > 0.0


def _probe(p: Point) -> float:
    z = p["z"]
    return math.sin(z) + z**3 / 7.0


def _exact_binom(z: float, h: float, n: int) -> float:
    alpha = Fraction(z) / Fraction(h)
    acc = Fraction(1)
    for k in range(n):
        acc *= (alpha - k) / (k + 1)
    return float(acc)


def _order(err: Callable[[float], float], h: float) -> float:
    """log10 of the error ratio between steps h and h/10."""
    return math.log10(abs(err(h)) / abs(err(h / 10.0)))


def _fd_y(func, x, y, h, step=1e-6):
    return (func(x, y + step, h) - func(x, y - step, h)) / (2.0 * step)


XY = {"x": (-2.0, 2.0), "y": (-2.0, 2.0)}
Z_N = {"z": (-2.0, 2.0), "n": (1, 10)}
Z_WIDE_N = {"z": (-10.0, 10.0), "n": (1, 10)}
X123 = {"x1": (-2.0, 2.0), "x2": (-2.0, 2.0), "x3": (-2.0, 2.0)}
X12Y = {"x1": (-2.0, 2.0), "x2": (-2.0, 2.0), "y": (-2.0, 2.0)}

B, F, C = gp.PowerKind.BACKWARD, gp.PowerKind.FORWARD, gp.PowerKind.CENTRAL


def _ids(*names):
    return lambda p: all(_in_sub(p[v], p["h"]) for v in names)


def _clear_of_pole(*names):
    # e_h is ill-conditioned as 1 + hx -> 0 (condition number |xy| / (1 + hx))
    return lambda p: all(1.0 + p["h"] * p[v] >= POLE_MARGIN for v in names)


def _series_guard(p):
    return abs(p["h"] * p["x"]) <= 0.5


def _build() -> list[Identity]:
    I = Identity
    E, S = de.e_sub, de.e_sup
    reg = [
        # generalized powers
        I("power.reflection_backward", "z^(n,h) = z^[n,-h]", Z_N,
          lambda p: (gp.gen_pow(p["z"], p["n"], p["h"], B), gp.gen_pow(p["z"], p["n"], -p["h"], F)),
          h_values=H_WITH_ZERO),
        I("power.reflection_forward", "z^[n,h] = z^(n,-h)", Z_N,
          lambda p: (gp.gen_pow(p["z"], p["n"], p["h"], F), gp.gen_pow(p["z"], p["n"], -p["h"], B)),
          h_values=H_WITH_ZERO),
        I("power.central_parity", "z^<n,h> = z^<n,-h>", Z_N,
          lambda p: (gp.gen_pow(p["z"], p["n"], p["h"], C), gp.gen_pow(p["z"], p["n"], -p["h"], C)),
          h_values=H_WITH_ZERO),
        I("power.central_to_backward", "z^<n,h> = z (z+(n-2)h)^(n-1,2h)", Z_N,
          lambda p: (gp.gen_pow(p["z"], p["n"], p["h"], C),
                     p["z"] * gp.gen_pow(p["z"] + (p["n"] - 2) * p["h"], p["n"] - 1, 2 * p["h"], B)),
          h_values=H_WITH_ZERO),
        I("power.central_factored_even", "z^<2m,h> = z^(m,2h) z^[m,2h]", {"z": (-2.0, 2.0), "m": (1, 5)},
          lambda p: (gp.gen_pow(p["z"], 2 * p["m"], p["h"], C),
                     gp.gen_pow(p["z"], p["m"], 2 * p["h"], B) * gp.gen_pow(p["z"], p["m"], 2 * p["h"], F)),
          h_values=H_WITH_ZERO),
        I("power.central_factored_odd", "z^<2m+1,h> = z (z-h)^(m,2h) (z+h)^[m,2h]", {"z": (-2.0, 2.0), "m": (0, 4)},
          lambda p: (gp.gen_pow(p["z"], 2 * p["m"] + 1, p["h"], C),
                     p["z"] * gp.gen_pow(p["z"] - p["h"], p["m"], 2 * p["h"], B)
                     * gp.gen_pow(p["z"] + p["h"], p["m"], 2 * p["h"], F)),
          h_values=H_WITH_ZERO),
        I("power.even_odd_product", "z^<2m,h> z^<2m+1,h> = z z^(2m,h) z^[2m,h]", {"z": (-2.0, 2.0), "m": (0, 4)},
          lambda p: (gp.gen_pow(p["z"], 2 * p["m"], p["h"], C) * gp.gen_pow(p["z"], 2 * p["m"] + 1, p["h"], C),
                     p["z"] * gp.gen_pow(p["z"], 2 * p["m"], p["h"], B) * gp.gen_pow(p["z"], 2 * p["m"], p["h"], F)),
          h_values=H_WITH_ZERO),
        I("power.binomial_link", "C(z/h, n) = z^(n,h) / (h^n n!)", Z_N,
          lambda p: (gp.binom_via_genpow(p["z"], p["n"], p["h"]), _exact_binom(p["z"], p["h"], p["n"]))),
        # difference operators
        I("ops.backward_is_reflected_forward", "nabla_{z,h} f(z) = Delta_{z,-h} f(z)", {"z": (-2.0, 2.0)},
          lambda p: (do.backward_diff(lambda z: _probe({"z": z}), p["z"], p["h"]),
                     do.forward_diff(lambda z: _probe({"z": z}), p["z"], -p["h"]))),
        I("ops.backward_is_shifted_forward", "nabla_{z,h} f(z) = Delta_{z,h} f(z-h)", {"z": (-2.0, 2.0)},
          lambda p: (do.backward_diff(lambda z: _probe({"z": z}), p["z"], p["h"]),
                     do.forward_diff(lambda z: _probe({"z": z}), p["z"] - p["h"], p["h"]))),
        I("ops.central_symmetry", "delta_{z,-h} f(z) = delta_{z,h} f(z)", {"z": (-2.0, 2.0)},
          lambda p: (do.central_diff(lambda z: _probe({"z": z}), p["z"], -p["h"]),
                     do.central_diff(lambda z: _probe({"z": z}), p["z"], p["h"]))),
        I("ops.lower_forward", "Delta_{z,h} z^(n,h) = n z^(n-1,h)", Z_WIDE_N,
          lambda p: (do.forward_diff(lambda z: gp.gen_pow(z, p["n"], p["h"], B), p["z"], p["h"]),
                     p["n"] * gp.gen_pow(p["z"], p["n"] - 1, p["h"], B)),
          tolerance=EXPANSION),
        I("ops.lower_backward", "nabla_{z,h} z^[n,h] = n z^[n-1,h]", Z_WIDE_N,
          lambda p: (do.backward_diff(lambda z: gp.gen_pow(z, p["n"], p["h"], F), p["z"], p["h"]),
                     p["n"] * gp.gen_pow(p["z"], p["n"] - 1, p["h"], F)),
          tolerance=EXPANSION),
        I("ops.lower_central", "delta_{z,h} z^<n,h> = n z^<n-1,h>", Z_WIDE_N,
          lambda p: (do.central_diff(lambda z: gp.gen_pow(z, p["n"], p["h"], C), p["z"], p["h"]),
                     p["n"] * gp.gen_pow(p["z"], p["n"] - 1, p["h"], C)),
          tolerance=EXPANSION),
        # deformation maps and groups
        I("arith.sub_commutative", "x1 (+)_h x2 = x2 (+)_h x1", X123,
          lambda p: (da.oplus_sub(p["x1"], p["x2"], p["h"]), da.oplus_sub(p["x2"], p["x1"], p["h"])),
          guard=_ids("x1", "x2"), h_values=H_WITH_ZERO),
        I("arith.sub_associative", "(x1 (+)_h x2) (+)_h x3 = x1 (+)_h (x2 (+)_h x3)", X123,
          lambda p: (da.oplus_sub(da.oplus_sub(p["x1"], p["x2"], p["h"]), p["x3"], p["h"]),
                     da.oplus_sub(p["x1"], da.oplus_sub(p["x2"], p["x3"], p["h"]), p["h"])),
          guard=_ids("x1", "x2", "x3"), h_values=H_WITH_ZERO),
        I("arith.sub_neutral", "x (+)_h 0 = x", {"x": (-2.0, 2.0)},
          lambda p: (da.oplus_sub(p["x"], 0.0, p["h"]), p["x"]), guard=_ids("x"), h_values=H_WITH_ZERO),
        I("arith.sub_inverse", "x (+)_h ((-)_h x) = 0", {"x": (-2.0, 2.0)},
          lambda p: (da.oplus_sub(p["x"], da.neg_sub(p["x"], p["h"]), p["h"]), 0.0),
          guard=_ids("x"), h_values=H_WITH_ZERO),
        I("arith.sub_closure", "x1, x2 in I  =>  x1 (+)_h x2 in I", X123,
          lambda p: (float(da.oplus_sub(p["x1"], p["x2"], p["h"]) in da.group_domain(p["h"])), 1.0),
          guard=_ids("x1", "x2"), h_values=H_WITH_ZERO, measure="abs"),
        I("arith.sub_minus", "x1 (-)_h x2 = x1 (+)_h ((-)_h x2) = (x1 - x2)/(1 + h x2)", X123,
          lambda p: (da.oplus_sub(p["x1"], da.neg_sub(p["x2"], p["h"]), p["h"]), da.ominus_sub(p["x1"], p["x2"], p["h"])),
          guard=_ids("x1", "x2"), h_values=H_WITH_ZERO),
        I("arith.sub_homomorphism", "{x1}_h + {x2}_h = {x1 (+)_h x2}_h", X123,
          lambda p: (da.brace_sub(p["x1"], p["h"]) + da.brace_sub(p["x2"], p["h"]),
                     da.brace_sub(da.oplus_sub(p["x1"], p["x2"], p["h"]), p["h"])),
          guard=_ids("x1", "x2"), h_values=H_WITH_ZERO),
        I("arith.sup_commutative", "x1 (+)^h x2 = x2 (+)^h x1", X123,
          lambda p: (da.oplus_sup(p["x1"], p["x2"], p["h"]), da.oplus_sup(p["x2"], p["x1"], p["h"])),
          h_values=H_WITH_ZERO),
        I("arith.sup_associative", "(x1 (+)^h x2) (+)^h x3 = x1 (+)^h (x2 (+)^h x3)", X123,
          lambda p: (da.oplus_sup(da.oplus_sup(p["x1"], p["x2"], p["h"]), p["x3"], p["h"]),
                     da.oplus_sup(p["x1"], da.oplus_sup(p["x2"], p["x3"], p["h"]), p["h"])),
          h_values=H_WITH_ZERO),
        I("arith.sup_neutral", "x (+)^h 0 = x", {"x": (-2.0, 2.0)},
          lambda p: (da.oplus_sup(p["x"], 0.0, p["h"]), p["x"]), h_values=H_WITH_ZERO),
        I("arith.sup_inverse", "x (+)^h (-x) = 0", {"x": (-2.0, 2.0)},
          lambda p: (da.oplus_sup(p["x"], -p["x"], p["h"]), 0.0), h_values=H_WITH_ZERO),
        I("arith.sup_minus", "x1 (-)^h x2 = x1 (+)^h (-x2)", X123,
          lambda p: (da.ominus_sup(p["x1"], p["x2"], p["h"]), da.oplus_sup(p["x1"], -p["x2"], p["h"])),
          h_values=H_WITH_ZERO),
        I("arith.sup_homomorphism", "{x1}^h + {x2}^h = {x1 (+)^h x2}^h", X123,
          lambda p: (da.brace_sup(p["x1"], p["h"]) + da.brace_sup(p["x2"], p["h"]),
                     da.brace_sup(da.oplus_sup(p["x1"], p["x2"], p["h"]), p["h"])),
          h_values=H_WITH_ZERO),
        # e_h
        I("esub.positive", "e_h(x,y) > 0 on 1 + hx > 0", XY,
          lambda p: (float(E(p["x"], p["y"], p["h"]) > 0.0), 1.0),
          guard=_ids("x"), h_values=H_WITH_ZERO, measure="abs"),
        I("esub.neutral", "e_h(0,y) = 1", XY, lambda p: (E(0.0, p["y"], p["h"]), 1.0), h_values=H_WITH_ZERO),
        I("esub.unit_y", "e_h(x,0) = 1", XY, lambda p: (E(p["x"], 0.0, p["h"]), 1.0),
          guard=_ids("x"), h_values=H_WITH_ZERO),
        I("esub.reflection", "e_{-h}(x,y) = e_h(-x,-y)", XY,
          lambda p: (E(p["x"], p["y"], -p["h"]), E(-p["x"], -p["y"], p["h"])),
          guard=lambda p: _in_sub(p["x"], -p["h"]), tolerance=EXACT, h_values=H_WITH_ZERO),
        I("esub.additive_y", "e_h(x,y1+y2) = e_h(x,y1) e_h(x,y2)", {"x": (-2.0, 2.0), "y1": (-2.0, 2.0), "y2": (-2.0, 2.0)},
          lambda p: (E(p["x"], p["y1"] + p["y2"], p["h"]), E(p["x"], p["y1"], p["h"]) * E(p["x"], p["y2"], p["h"])),
          guard=_ids("x"), h_values=H_WITH_ZERO),
        I("esub.first_variable_product", "e_h(x1,y) e_h(x2,y) = e_h(x1 + x2 + h x1 x2, y)", X12Y,
          lambda p: (E(p["x1"], p["y"], p["h"]) * E(p["x2"], p["y"], p["h"]),
                     E(p["x1"] + p["x2"] + p["h"] * p["x1"] * p["x2"], p["y"], p["h"])),
          guard=_clear_of_pole("x1", "x2"), tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esub.oplus_product", "e_h(x1 (+)_h x2, y) = e_h(x1,y) e_h(x2,y)", X12Y,
          lambda p: (E(da.oplus_sub(p["x1"], p["x2"], p["h"]), p["y"], p["h"]),
                     E(p["x1"], p["y"], p["h"]) * E(p["x2"], p["y"], p["h"])),
          guard=_clear_of_pole("x1", "x2"), tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esub.ominus_product", "e_h(x1 (-)_h x2, y) = e_h(x1,y) e_h(x2,-y)", X12Y,
          lambda p: (E(da.ominus_sub(p["x1"], p["x2"], p["h"]), p["y"], p["h"]),
                     E(p["x1"], p["y"], p["h"]) * E(p["x2"], -p["y"], p["h"])),
          guard=_clear_of_pole("x1", "x2"), tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esub.inverse_argument", "e_h((-)_h x, y) = e_h(x,-y)", XY,
          lambda p: (E(da.neg_sub(p["x"], p["h"]), p["y"], p["h"]), E(p["x"], -p["y"], p["h"])),
          guard=_clear_of_pole("x"), tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esub.log_form", "e_h(x,y) = exp({x}_h y) = (1 + hx)^(y/h)", XY,
          lambda p: (E(p["x"], p["y"], p["h"]), (1.0 + p["h"] * p["x"]) ** (p["y"] / p["h"])),
          guard=_ids("x")),
        # exp_h
        I("esup.positive", "exp_h(x,y) > 0", XY, lambda p: (float(S(p["x"], p["y"], p["h"]) > 0.0), 1.0),
          h_values=H_WITH_ZERO, measure="abs"),
        I("esup.neutral", "exp_h(0,y) = 1", XY, lambda p: (S(0.0, p["y"], p["h"]), 1.0), h_values=H_WITH_ZERO),
        I("esup.unit_y", "exp_h(x,0) = 1", XY, lambda p: (S(p["x"], 0.0, p["h"]), 1.0), h_values=H_WITH_ZERO),
        I("esup.reflection", "exp_{-h}(x,y) = exp_h(x,y)", XY,
          lambda p: (S(p["x"], p["y"], -p["h"]), S(p["x"], p["y"], p["h"])), tolerance=EXACT, h_values=H_WITH_ZERO),
        I("esup.additive_y", "exp_h(x,y1+y2) = exp_h(x,y1) exp_h(x,y2)", {"x": (-2.0, 2.0), "y1": (-2.0, 2.0), "y2": (-2.0, 2.0)},
          lambda p: (S(p["x"], p["y1"] + p["y2"], p["h"]), S(p["x"], p["y1"], p["h"]) * S(p["x"], p["y2"], p["h"])),
          h_values=H_WITH_ZERO),
        I("esup.first_variable_product", "exp_h(x1,y) exp_h(x2,y) = exp_h(x1 sqrt(1+h^2 x2^2) + x2 sqrt(1+h^2 x1^2), y)", X12Y,
          lambda p: (S(p["x1"], p["y"], p["h"]) * S(p["x2"], p["y"], p["h"]),
                     S(p["x1"] * math.sqrt(1 + (p["h"] * p["x2"]) ** 2) + p["x2"] * math.sqrt(1 + (p["h"] * p["x1"]) ** 2),
                       p["y"], p["h"])),
          tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esup.oplus_product", "exp_h(x1 (+)^h x2, y) = exp_h(x1,y) exp_h(x2,y)", X12Y,
          lambda p: (S(da.oplus_sup(p["x1"], p["x2"], p["h"]), p["y"], p["h"]),
                     S(p["x1"], p["y"], p["h"]) * S(p["x2"], p["y"], p["h"])),
          tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esup.ominus_product", "exp_h(x1 (-)^h x2, y) = exp_h(x1,y) exp_h(-x2,y)", X12Y,
          lambda p: (S(da.ominus_sup(p["x1"], p["x2"], p["h"]), p["y"], p["h"]),
                     S(p["x1"], p["y"], p["h"]) * S(-p["x2"], p["y"], p["h"])),
          tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esup.ominus_product_y", "exp_h(x1 (-)^h x2, y) = exp_h(x1,y) exp_h(x2,-y)", X12Y,
          lambda p: (S(da.ominus_sup(p["x1"], p["x2"], p["h"]), p["y"], p["h"]),
                     S(p["x1"], p["y"], p["h"]) * S(p["x2"], -p["y"], p["h"])),
          tolerance=PRODUCT, h_values=H_WITH_ZERO),
        I("esup.arcsinh_log", "asinh(hx) = ln(hx + sqrt(1 + h^2 x^2))", {"x": (-2.0, 2.0)},
          lambda p: (math.asinh(p["h"] * p["x"]), math.log(p["h"] * p["x"] + math.sqrt(1 + (p["h"] * p["x"]) ** 2)))),
        I("esup.log_form", "exp_h(x,y) = exp({x}^h y) = (hx + sqrt(1 + h^2 x^2))^(y/h)", XY,
          lambda p: (S(p["x"], p["y"], p["h"]),
                     (p["h"] * p["x"] + math.sqrt(1 + (p["h"] * p["x"]) ** 2)) ** (p["y"] / p["h"]))),
        # special cases and the connection formula
        I("special.tsallis", "e_{1-q}(x,1) = (1 + (1-q)x)^(1/(1-q)) on 1 + (1-q)x > 0", {"x": (-2.0, 2.0)},
          lambda p: (de.tsallis_q_exp(p["x"], 1.0 - p["h"]),
                     (1.0 + (1.0 - (1.0 - p["h"])) * p["x"]) ** (1.0 / (1.0 - (1.0 - p["h"])))),
          guard=_ids("x")),
        I("special.tsallis_cutoff", "e_q^x = 0 when 1 + (1-q)x <= 0", {"x": (-4.0, 4.0)},
          lambda p: (de.tsallis_q_exp(p["x"], 1.0 - p["h"]), 0.0),
          guard=lambda p: (1.0 - (1.0 - p["h"])) * p["x"] <= -1.0, h_values=(0.5, -0.5, 1.0, -1.0), measure="abs"),
        I("special.quantum_group", "e_{p-1}(1,y) = p^(y/(p-1))", {"y": (-2.0, 2.0)},
          lambda p: (de.quantum_group_exp(p["y"], 1.0 + p["h"]), (1.0 + p["h"]) ** (p["y"] / p["h"])),
          h_values=(0.1, -0.1, 0.5, -0.5, 1.0, 2.0)),
        I("special.kaniadakis", "exp_kappa(x,1) = (sqrt(1 + kappa^2 x^2) + kappa x)^(1/kappa)", {"x": (-2.0, 2.0)},
          lambda p: (de.kaniadakis_exp(p["x"], p["h"]),
                     (math.sqrt(1 + (p["h"] * p["x"]) ** 2) + p["h"] * p["x"]) ** (1.0 / p["h"]))),
        I("connection.sub_to_sup", "exp_h(x,y) = e_h(x - (1 - sqrt(1 + h^2 x^2))/h, y)", XY,
          lambda p: (S(p["x"], p["y"], p["h"]), E(de.sub_to_sup_shift(p["x"], p["h"]), p["y"], p["h"])),
          tolerance=PRODUCT),
        # expansions
        I("series.e_sub", "e_h(x,y) = sum x^n y^(n,h) / n!  (|hx| < 1)", XY,
          lambda p: (se.expand_e_sub(p["x"], p["y"], p["h"]).value, E(p["x"], p["y"], p["h"])),
          guard=_series_guard, tolerance=EXPANSION, h_values=H_WITH_ZERO),
        I("series.e_sub_neg", "e_{-h}(x,y) = sum x^n y^[n,h] / n!  (|hx| < 1)", XY,
          lambda p: (se.expand_e_sub_neg(p["x"], p["y"], p["h"]).value, E(p["x"], p["y"], -p["h"])),
          guard=_series_guard, tolerance=EXPANSION, h_values=H_WITH_ZERO),
        I("series.e_sup", "exp_h(x,y) = sum x^n y^<n,h> / n!", XY,
          lambda p: (se.expand_e_sup(p["x"], p["y"], p["h"]).value, S(p["x"], p["y"], p["h"])),
          guard=_series_guard, tolerance=EXPANSION, h_values=H_WITH_ZERO),
        I("series.coefficients_forward", "a_n(y,h) = y^(n,h)", {"y": (-2.0, 2.0), "n": (0, 10)},
          lambda p: (se.recurrence_coefficients(p["y"], p["h"], p["n"], "forward")[-1], gp.gen_pow(p["y"], p["n"], p["h"], B))),
        I("series.coefficients_central", "c_n(y,h) = y^<n,h>", {"y": (-2.0, 2.0), "n": (0, 10)},
          lambda p: (se.recurrence_coefficients(p["y"], p["h"], p["n"], "central")[-1], gp.gen_pow(p["y"], p["n"], p["h"], C))),
        # eigenfunctions of the difference operators
        I("eigen.forward", "Delta_{y,h} e_h(x,y) = x e_h(x,y)", XY,
          lambda p: (do.forward_diff(lambda y: E(p["x"], y, p["h"]), p["y"], p["h"]), p["x"] * E(p["x"], p["y"], p["h"])),
          guard=_ids("x"), tolerance=EXPANSION),
        I("eigen.backward", "nabla_{y,h} e_{-h}(x,y) = x e_{-h}(x,y)", XY,
          lambda p: (do.backward_diff(lambda y: E(p["x"], y, -p["h"]), p["y"], p["h"]), p["x"] * E(p["x"], p["y"], -p["h"])),
          guard=lambda p: _in_sub(p["x"], -p["h"]), tolerance=EXPANSION),
        I("eigen.central", "delta_{y,h} exp_h(x,y) = x exp_h(x,y)", XY,
          lambda p: (do.central_diff(lambda y: S(p["x"], y, p["h"]), p["y"], p["h"]), p["x"] * S(p["x"], p["y"], p["h"])),
          tolerance=EXPANSION),
        # deformed derivatives
        I("deriv.sub", "(1 + hx) d/dx e_h(x,y) = y e_h(x,y)", XY,
          lambda p: (dc.deformed_derivative(lambda x: E(x, p["y"], p["h"]), p["x"], p["h"], "sub", 1e-6),
                     dc.deformed_derivative_analytic("sub", "sub", p["x"], p["y"], p["h"])),
          guard=lambda p: 1.0 + p["h"] * p["x"] >= 0.1, tolerance=FINITE_DIFF, h_values=H_WITH_ZERO),
        I("deriv.sup", "sqrt(1 + h^2 x^2) d/dx exp_h(x,y) = y exp_h(x,y)", XY,
          lambda p: (dc.deformed_derivative(lambda x: S(x, p["y"], p["h"]), p["x"], p["h"], "sup", 1e-6),
                     dc.deformed_derivative_analytic("sup", "sup", p["x"], p["y"], p["h"])),
          tolerance=FINITE_DIFF, h_values=H_WITH_ZERO),
        I("partial_y.sub", "d/dy e_h(x,y) = {x}_h e_h(x,y)", XY,
          lambda p: (_fd_y(E, p["x"], p["y"], p["h"]), dc.partial_y_factor(p["x"], p["h"], "sub") * E(p["x"], p["y"], p["h"])),
          guard=_ids("x"), tolerance=FINITE_DIFF, h_values=H_WITH_ZERO),
        I("partial_y.sup", "d/dy exp_h(x,y) = {x}^h exp_h(x,y)", XY,
          lambda p: (_fd_y(S, p["x"], p["y"], p["h"]), dc.partial_y_factor(p["x"], p["h"], "sup") * S(p["x"], p["y"], p["h"])),
          tolerance=FINITE_DIFF, h_values=H_WITH_ZERO),
        # classical limits, checked as observed convergence orders between h and h/10
        I("limit.e_sub", "e_h(x,y) -> e^(xy) as h -> 0, error O(h)", XY,
          lambda p: (_order(lambda h: E(p["x"], p["y"], h) - math.exp(p["x"] * p["y"]), p["h"]), 1.0),
          guard=lambda p: min(abs(p["x"]), abs(p["y"])) >= 0.1, tolerance=ORDER, h_values=H_LIMIT, measure="abs"),
        I("limit.e_sup", "exp_h(x,y) -> e^(xy) as h -> 0, error O(h^2)", XY,
          lambda p: (_order(lambda h: S(p["x"], p["y"], h) - math.exp(p["x"] * p["y"]), p["h"]), 2.0),
          guard=lambda p: min(abs(p["x"]), abs(p["y"])) >= 0.1, tolerance=ORDER, h_values=H_LIMIT, measure="abs"),
        I("limit.oplus_sub", "x1 (+)_h x2 -> x1 + x2 as h -> 0, error O(h)", X123,
          lambda p: (_order(lambda h: da.oplus_sub(p["x1"], p["x2"], h) - (p["x1"] + p["x2"]), p["h"]), 1.0),
          guard=lambda p: min(abs(p["x1"]), abs(p["x2"])) >= 0.1, tolerance=ORDER, h_values=H_LIMIT, measure="abs"),
        I("limit.oplus_sup", "x1 (+)^h x2 -> x1 + x2 as h -> 0, error O(h^2)", X123,
          lambda p: (_order(lambda h: da.oplus_sup(p["x1"], p["x2"], h) - (p["x1"] + p["x2"]), p["h"]), 2.0),
          guard=lambda p: min(abs(p["x1"]), abs(p["x2"]), abs(p["x1"] + p["x2"])) >= 0.1,
          tolerance=ORDER, h_values=H_LIMIT, measure="abs"),
    ]
    ids = [i.id for i in reg]
    assert len(ids) == len(set(ids)), "duplicate identity id"
    return reg


REGISTRY: dict[str, Identity] = {i.id: i for i in _build()}


def identity_ids() -> list[str]:
    return list(REGISTRY)


def select(pattern: str | None) -> list[str]:
    """Registry ids matching a glob pattern (all ids if ``pattern`` is None)."""
    if pattern is None:
        return identity_ids()
    return [i for i in REGISTRY if fnmatch.fnmatchcase(i, pattern)]


# ---------------------------------------------------------------- sampling

def _draw(rng: random.Random, lo, hi, name: str):
    if name in INT_VARS:
        return rng.randint(int(lo), int(hi))
    return rng.uniform(lo, hi)


def _lattice(ranges: Mapping[str, tuple[float, float]], samples: int) -> Iterable[dict]:
    names = list(ranges)
    per_axis = max(1, math.ceil(samples ** (1.0 / max(1, len(names)))))
    axes = []
    for name in names:
        lo, hi = ranges[name]
        if name in INT_VARS:
            vals = sorted({round(lo + (hi - lo) * i / max(1, per_axis - 1)) for i in range(per_axis)})
        elif per_axis == 1:
            vals = [0.5 * (lo + hi)]
        else:
            vals = [lo + (hi - lo) * i / (per_axis - 1) for i in range(per_axis)]
        axes.append(vals)
    for combo in itertools.product(*axes):
        yield dict(zip(names, combo))


def _guarded(ident: Identity, p: Point) -> bool:
    try:
        return bool(ident.guard(p))
    except (ValueError, ArithmeticError):
        return False


def _points(ident: Identity, grid: GridSpec, h: float) -> tuple[list[Point], int]:
    ranges = {k: grid.ranges.get(k, v) for k, v in ident.variables.items()}
    accepted: list[Point] = []
    skipped = 0
    if grid.mode == "uniform":
        for p in _lattice(ranges, grid.samples):
            p["h"] = h
            if _guarded(ident, p):
                accepted.append(p)
            else:
                skipped += 1
        return accepted, skipped
    rng = random.Random(f"{grid.seed}|{ident.id}|{h!r}")
    for _ in range(grid.samples * grid.attempts_per_sample):
        if len(accepted) == grid.samples:
            break
        p = {k: _draw(rng, lo, hi, k) for k, (lo, hi) in ranges.items()}
        p["h"] = h
        if _guarded(ident, p):
            accepted.append(p)
        else:
            skipped += 1
    return accepted, skipped


def _describe(ident: Identity, grid: GridSpec, hs) -> str:
    parts = [f"{grid.mode}"]
    if grid.mode == "random":
        parts.append(f"seed={grid.seed}")
    parts.append(f"samples={grid.samples}/h")
    parts.append("h=" + ",".join(repr(h) for h in hs))
    for k, v in ident.variables.items():
        lo, hi = grid.ranges.get(k, v)
        parts.append(f"{k}=[{lo!r},{hi!r}]")
    return " ".join(parts)


# ---------------------------------------------------------------- running

def run_identity(identity_id: str, grid: GridSpec | None = None, tolerance: float | None = None) -> IdentityReport:
    """Evaluate one registered identity over ``grid``.

    Raises :class:`UnknownIdentityError` for an unregistered id and
    :class:`EmptyGridError` when some deformation value leaves no sample
    satisfying the identity's preconditions.
    """
    try:
        ident = REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity {identity_id!r}") from None
    grid = grid or GridSpec()
    tol = ident.tolerance if tolerance is None else tolerance
    hs = ident.h_values if grid.h_values is None else tuple(grid.h_values)

    n_samples = skipped = 0
    max_abs = max_rel = max_err = 0.0
    worst: dict = {}
    for h in hs:
        pts, skip = _points(ident, grid, h)
        skipped += skip
        if not pts:
            raise EmptyGridError(f"{identity_id}: no admissible sample for h={h!r}")
        for p in pts:
            lhs, rhs = ident.evaluate(p)
            abs_err = abs(lhs - rhs)
            rel_err = abs_err / abs(rhs) if rhs else (0.0 if abs_err == 0 else math.inf)
            err = abs_err if ident.measure == "abs" else abs_err / max(1.0, abs(rhs))
            if math.isnan(abs_err):
                abs_err = rel_err = err = math.inf
            max_abs = max(max_abs, abs_err)
            max_rel = max(max_rel, rel_err)
            if err > max_err or not worst:
                max_err = err
                worst = dict(p, lhs=lhs, rhs=rhs)
            n_samples += 1

    return IdentityReport(
        identity_id=ident.id,
        formula=ident.formula,
        grid_spec=_describe(ident, grid, hs),
        samples=n_samples,
        skipped=skipped,
        max_abs_err=max_abs,
        max_rel_err=max_rel,
        max_err=max_err,
        tolerance=tol,
        passed=max_err <= tol,
        worst_point=worst,
    )


def run_all(
    grid_overrides: Mapping | None = None,
    seed: int = 42,
    pattern: str | None = None,
    workers: int = 1,
) -> list[IdentityReport]:
    """Run every registered identity (or those matching ``pattern``) in registry order.

    ``grid_overrides`` holds :class:`GridSpec` field values, e.g.
    ``{"ranges": {"x": (-1, 1)}, "samples": 20}``.  Identities are
    independent, so ``workers > 1`` evaluates them on a thread pool; the
    output order does not depend on completion order.
    """
    grid = replace(GridSpec(**dict(grid_overrides or {})), seed=seed)
    ids = select(pattern)
    if not ids:
        raise UnknownIdentityError(f"pattern {pattern!r} matches no identity")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda i: run_identity(i, grid), ids))
    return [run_identity(i, grid) for i in ids]
