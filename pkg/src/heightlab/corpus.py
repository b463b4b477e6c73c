"""Bundled verification corpus: desk-scale scenarios over seven Galois
fields, each with named subfields and 20+ elements covering units,
non-units, torsion, rationals, and products across subfields.

Defining polynomials are chosen monogenic (the power-basis order is the
full ring of integers), so no corpus prime is an index divisor.  Radical
generators are precomputed in the power basis and verified by the corpus
tests:

  * degree 4, t^4 - 4 t^2 + 1 (t = (sqrt2 + sqrt6)/2, disc 2304):
      sqrt3 = t^2 - 2,  sqrt2 = t^3 - 3 t,  sqrt6 = sqrt2 * sqrt3,
      sqrt2 + sqrt3 = t^3 + t^2 - 3 t - 2
  * degree 6, t^6 - 3 t^5 + 5 t^3 - 3 t + 1 (root field of x^3 - 2,
    disc -34992):
      cbrt2     = 1 + t - t^2
      w*cbrt2   = -5 + 5 t + 10 t^2 - 3 t^3 - 5 t^4 + 2 t^5
      w         = -4 + 4 t + 8 t^2 - 2 t^3 - 5 t^4 + 2 t^5   (cube root of 1)
  * degree 4, t^4 + 1 (t = zeta8):
      sqrt2 = t - t^3,  i = t^2,  sqrt(-2) = t + t^3
  * degree 4, t^4+t^3+t^2+t+1 (t = zeta5):
      sqrt5 = -1 - 2 t^2 - 2 t^3
"""

from __future__ import annotations

import functools

from .scenario import Scenario, parse_scenario

_COMMON_CHECKS = [
    "height-backend",
    "product-formula",
    "vk-sandwich",
    "orbit-delta",
    "projection-laws",
    "valuations",
]

_SQRT2_EXPR = "t^3-3*t"
_SQRT3_EXPR = "t^2-2"
_SQRT6_EXPR = f"({_SQRT2_EXPR})*({_SQRT3_EXPR})"

_CBRT2 = "1+t-t^2"
_OM_CBRT2 = "-5+5*t+10*t^2-3*t^3-5*t^4+2*t^5"
_OMEGA = "-4+4*t+8*t^2-2*t^3-5*t^4+2*t^5"

_DOCS = [
    {
        "v": 1,
        "name": "rationals",
        "field": [-1, 1],
        "subfields": {"Q": []},
        "elements": {
            "two": "2", "three": "3", "half": "1/2", "threefifths": "3/5",
            "neg7": "-7", "ten": "10", "approx_pi": "22/7", "neg1": "-1",
            "one": "1", "threehalves": "6/4", "hundred": "100",
            "neghundred": "-100", "q73": "7/3", "five": "5", "fifth": "1/5",
            "q98": "9/8", "p64": "64", "negcube": "-32/27", "eleven": "11",
            "q1311": "13/11", "pow32": "2^5", "ninth": "3^-2",
        },
        "checks": _COMMON_CHECKS,
    },
    {
        "v": 1,
        "name": "sqrt2",
        "field": [-2, 0, 1],
        "subfields": {"Q": []},
        "elements": {
            "sqrt2": "t", "u": "1+t", "two": "2", "uinv": "1/(1+t)",
            "negsqrt2": "-t", "usq": "(1+t)^2", "a1": "3-2*t",
            "half_t": "t/2", "dbl": "2*t", "a2": "1+2*t", "a3": "5+t",
            "seven": "7", "negq": "-3/2", "cube": "t^3", "a4": "3+t",
            "a5": "1-t", "a6": "t-2", "a7": "10*t", "a8": "1/2+t",
            "a9": "2-3*t", "norm7": "(3+t)*(3-t)", "neg1": "-1",
        },
        "checks": _COMMON_CHECKS + [
            {"suite": "vk-sandwich", "anchor_element": "u", "anchor_K": "Q",
             "anchor_value": 0.4406867935097715, "anchor_tol": 1e-9},
        ],
    },
    {
        "v": 1,
        "name": "zeta3",
        "field": [1, 1, 1],
        "subfields": {"Q": []},
        "elements": {
            "zeta": "t", "zeta2": "t^2", "negzeta": "-t", "one": "1",
            "neg1": "-1", "tors6": "-t^2", "g": "1-t", "a1": "2+t",
            "a2": "1+2*t", "three": "3", "half": "1/2", "a3": "2-t",
            "a4": "5+3*t", "gsq": "(1-t)^2", "a5": "t/(1-t)", "two": "2",
            "a6": "4+t", "a7": "-2+5*t", "a8": "7*t", "a9": "(2+t)*(1-t)",
            "a10": "1/(2+t)", "a11": "3+2*t", "a12": "t-3",
        },
        "checks": _COMMON_CHECKS,
    },
    {
        "v": 1,
        "name": "sqrt2_sqrt3",
        "field": [1, 0, -4, 0, 1],
        "subfields": {
            "Q": [],
            "K1": [_SQRT2_EXPR],
            "K2": [_SQRT3_EXPR],
            "K3": [_SQRT6_EXPR],
        },
        "elements": {
            "theta": "t",
            "s2s3": "t^3+t^2-3*t-2",
            "sqrt2": _SQRT2_EXPR,
            "sqrt3": _SQRT3_EXPR,
            "sqrt6": _SQRT6_EXPR,
            "u12": f"1+{_SQRT2_EXPR}",
            "u13": f"1+{_SQRT3_EXPR}",
            "u23": f"2+{_SQRT3_EXPR}",
            "u56": f"5+2*({_SQRT6_EXPR})",
            "cross": f"(1+{_SQRT2_EXPR})*(2+{_SQRT3_EXPR})",
            "two": "2", "three": "3", "six": "6", "half": "1/2",
            "neg1": "-1", "a8": "t^2+1", "tcube": "t^3", "tinv": "1/t",
            "a1": "t-1", "a2": "1+t", "a3": "t/2", "a4": "3*t",
            "a5": "t^2-3", "a6": "2*t+1", "a7": "t^2+t-4",
        },
        "checks": _COMMON_CHECKS + [
            "commutativity",
            {"suite": "membership", "D": ["K1", "K2"],
             "member": "sqrt6", "non_member": "s2s3"},
            {"suite": "mixed-decomposition", "D": ["K1"], "E": ["K2"]},
        ],
    },
    {
        "v": 1,
        "name": "zeta5",
        "field": [1, 1, 1, 1, 1],
        "subfields": {"Q": [], "K5": ["-1-2*t^2-2*t^3"]},
        "elements": {
            "zeta": "t", "z2": "t^2", "z3": "t^3", "negz": "-t",
            "neg1": "-1", "sqrt5": "-1-2*t^2-2*t^3", "golden": "-t^2-t^3",
            "u1": "1+t", "u2": "1+t+t^2", "two": "2", "five": "5",
            "q32": "3/2", "a1": "1-t", "a2": "2+t", "a3": "t+t^4",
            "a4": "1+2*t", "a5": "7+t", "ucube": "(1+t)^3",
            "uinv": "1/(1+t)", "a6": "t^2+t^3", "a7": "4*t",
            "a8": "2-3*t", "a9": "1+t^2",
        },
        "checks": _COMMON_CHECKS + ["commutativity"],
    },
    {
        "v": 1,
        "name": "cbrt2_split",
        "field": [1, -3, 0, 5, 0, -3, 1],
        "subfields": {
            "Q": [],
            "K1": [_CBRT2],
            "K2": [_OM_CBRT2],
            "K3": [_OMEGA],
        },
        "elements": {
            "theta": "t",
            "cbrt2": _CBRT2,
            "om_cbrt2": _OM_CBRT2,
            "omega": _OMEGA,
            "cbrt4": f"({_CBRT2})^2",
            "unit": f"1+({_CBRT2})+({_CBRT2})^2",
            "neg1": "-1",
            "zeta6": f"-({_OMEGA})",
            "cross": f"({_CBRT2})*({_OMEGA})",
            "two": "2", "three": "3", "half": "1/2", "a1": "1+t",
            "a2": "1-t", "a3": "t^2", "a4": "t^3", "a5": "2*t+1",
            "a6": "5", "a7": "t^5", "a8": "1/(1+t)", "a9": "t^2+t",
            "a10": "3-t", "a11": "t^4-1",
        },
        "checks": _COMMON_CHECKS + [
            "commutativity",
            {"suite": "conjugation", "K": "K1", "L": "K2"},
        ],
    },
    {
        "v": 1,
        "name": "zeta8",
        "field": [1, 0, 0, 0, 1],
        "subfields": {
            "Q": [],
            "Ksqrt2": ["t-t^3"],
            "Ki": ["t^2"],
            "Ksqrtm2": ["t+t^3"],
        },
        "elements": {
            "zeta": "t", "i": "t^2", "sqrt2": "t-t^3", "sqrtm2": "t+t^3",
            "neg1": "-1", "z3": "t^3", "u": "1+t-t^3", "a0": "1+t",
            "two": "2", "half": "1/2", "a1": "1+t^2", "a2": "3*t",
            "a3": "t^2+t", "a4": "5+t", "a5": "1+2*t^2", "seven": "7",
            "a6": "1-t", "a7": "2+t^3", "a8": "3+t^2",
            "usq": "(1+t-t^3)^2", "a9": "t/(1+t)", "a10": "1/(3+t^2)",
        },
        "checks": _COMMON_CHECKS + ["commutativity"],
    },
]


def scenario_documents():
    """The raw JSON-able scenario documents."""
    import copy
    return copy.deepcopy(_DOCS)


@functools.lru_cache(maxsize=1)
def bundled_corpus() -> tuple:
    """Parse every bundled scenario document (cached; fields are shared)."""
    return tuple(parse_scenario(doc) for doc in scenario_documents())


def bundled_scenario(name: str) -> Scenario:
    for sc in bundled_corpus():
        if sc.name == name:
            return sc
    raise KeyError(f"no bundled scenario named {name!r}")
