"""The built-in proof-replay certificates for n = 3, 4, 5.

Each certificate replays one case of a nullcone argument: the substitutions
are the parameter values forced by the vanishing of the h.s.p. elements, and
the claims are (1) that the h.s.p. elements really vanish after them and
(2) the consequences used to conclude that every positive-degree invariant
vanishes.
"""

from __future__ import annotations

import itertools

from ..errors import UnsupportedCase
from .certificates import Branch, Claim, NullconeCertificate


def _pz(expr: str, label: str = "", stage: int | None = None) -> Claim:
    return Claim("poly_zero", expr, label, stage)


def _mz(expr: str, label: str = "", stage: int | None = None) -> Claim:
    return Claim("matrix_zero", expr, label or f"{expr} = 0", stage)


def _vanish(exprs, stage: int | None = None) -> list[Claim]:
    return [_pz(e, f"hypothesis {e} = 0 holds", stage) for e in exprs]


# n = 3 ---------------------------------------------------------------------------------


def n3_trabc() -> NullconeCertificate:
    hyp = ["sigma(2,A1)", "sigma(2,A2)", "sigma(2,A3)", "tr(A1*A2)", "tr(A2*A3)"]
    return NullconeCertificate(
        "N3_TRABC", 3, {"A1": "generic", "A2": "generic", "A3": "generic"},
        [
            Branch(
                "c2 != 0",
                [["c1", "-(a1*a2 + b1*b2)/c2"], ["c3", "-(a2*a3 + b2*b3)/c2"]],
                [
                    _pz("tr(A1*A2)", "tr(A1 A2) = 0 after solving for c1"),
                    _pz("tr(A2*A3)", "tr(A2 A3) = 0 after solving for c3"),
                    _pz("c2*tr(A1*A2*A3) - (a3*b1 - a1*b3)*sigma(2,A2)",
                        "c2 tr(A1 A2 A3) = (a3 b1 - a1 b3) sigma2(A2)"),
                ],
                nonzero=["c2"],
            ),
            Branch(
                "c2 = 0, b2 != 0",
                [["c2", "0"], ["b1", "-(a1*a2)/b2"], ["b3", "-(a2*a3)/b2"]],
                [
                    _pz("tr(A1*A2)", "tr(A1 A2) = 0 after solving for b1"),
                    _pz("tr(A2*A3)", "tr(A2 A3) = 0 after solving for b3"),
                    _pz("b2*tr(A1*A2*A3) + (a3*c1 - a1*c3)*sigma(2,A2)",
                        "b2 tr(A1 A2 A3) = -(a3 c1 - a1 c3) sigma2(A2)"),
                ],
                nonzero=["b2"],
            ),
            Branch(
                "c2 = b2 = 0",
                [["c2", "0"], ["b2", "0"], ["a2", "0"]],
                [
                    _pz("sigma(2,A2) - a2**2", "sigma2(A2) = a2^2, so a2 = 0", stage=2),
                    _mz("A2", "A2 = 0"),
                ],
            ),
        ],
        "sigma2(A_i) = tr(A_i A_j) = 0 for three 3x3 skew matrices forces tr(A1 A2 A3) = 0",
        f"hypotheses: {', '.join(hyp)}",
    )


def n3_induction(d: int = 4) -> NullconeCertificate:
    """The induction step, instantiated for every k < i <= l <= d with l >= 3.

    A_k is normalised to Skew(1+i, 0, -1+i) by substituting its parameters.
    tr(A_k A_i) = -2(1+i)a_i - 2(-1+i)c_i vanishes exactly when c_i = i a_i.
    """
    base = {f"A{m}": "generic" for m in range(1, d + 1)}
    branches = []
    for k in range(1, d + 1):
        for i in range(k + 1, d + 1):
            for l in range(max(i, 3), d + 1):
                subs = [[f"a{k}", "1 + I"], [f"b{k}", "0"], [f"c{k}", "-1 + I"],
                        [f"c{i}", f"I*a{i}"], [f"b{i}", "0"]]
                claims = [
                    _pz(f"sigma(2,A{k})", f"A{k} = Skew(1+i, 0, -1+i) has sigma2 = 0", stage=3),
                    _pz(f"tr(A{k}*A{i}) + 2*(1 + I)*a{i} + 2*(-1 + I)*c{i}",
                        f"tr(A{k} A{i}) = -2(1+i)a{i} - 2(-1+i)c{i}", stage=3),
                    _pz(f"tr(A{k}*A{i})", f"tr(A{k} A{i}) = 0 once c{i} = i a{i}", stage=4),
                    _pz(f"sigma(2,A{i}) - b{i}**2", f"sigma2(A{i}) = b{i}^2, so b{i} = 0", stage=4),
                    _pz(f"tr(A{i}*A{l}) + 2*(a{i}*a{l} + c{i}*c{l})",
                        f"tr(A{i} A{l}) = -2(a{i} a{l} + c{i} c{l})", stage=5),
                ]
                if l != i:
                    subs += [[f"c{l}", f"I*a{l}"], [f"b{l}", "0"]]
                claims.append(_pz(f"tr(A{i}*A{l})", f"tr(A{i} A{l}) = 0"))
                claims.append(_pz(f"sigma(2,A{i})", f"hypothesis sigma2(A{i}) = 0 holds"))
                branches.append(Branch(f"k={k}, i={i}, l={l}", subs, claims))
    return NullconeCertificate(
        "N3_INDUCTION", 3, base, branches,
        f"induction step on l for tr(A_i A_l) = 0, instantiated for d = {d}",
    )


# n = 4 ---------------------------------------------------------------------------------

_H2 = ["sigma(2,A1)", "det(A1)", "sigma(2,A2)", "det(A2)", "tr(A1*A2)", "tr(A1**2*A2**2)"]


def n4_q1() -> NullconeCertificate:
    subs = [["a2", "-I*d2"], ["c2", "I*f2"], ["b2", "0"], ["e2", "0"]]
    claims = _vanish(_H2) + [
        _mz("A1**2*A2"), _mz("A2**2*A1"), _mz("A1*A2*A1"), _mz("A2*A1*A2"),
        _pz("sigma(3,A1*A2)", "sigma3(A1 A2) = 0"),
    ]
    return NullconeCertificate("N4_Q1", 4, {"A1": "K3;0:1", "A2": "generic"},
                               [Branch("A1 = Q1", subs, claims)],
                               "n = 4, d = 2 with A1 = Q1")


_Q2_SUBS = lambda m: [[f"a{m}", f"-I*(b{m} + e{m}) + f{m}"], [f"d{m}", f"c{m}"],
                      [f"c{m}^2", f"(b{m} + I*f{m})*(e{m} + I*f{m})"]]


def n4_q2() -> NullconeCertificate:
    claims = _vanish(_H2) + [
        _mz("A2**2*A1"), _mz("A1*A2*A1"), _mz("A2*A1*A2"), _mz("A1**2"),
        _pz("sigma(3,A1*A2)", "sigma3(A1 A2) = 0"),
    ]
    return NullconeCertificate("N4_Q2", 4, {"A1": "K4:mu=0", "A2": "generic"},
                               [Branch("A1 = Q2", _Q2_SUBS(2), claims)],
                               "n = 4, d = 2 with A1 = Q2; c2^2 handled by reduction")


def _h3(names) -> list[str]:
    out = []
    for x in names:
        out += [f"sigma(2,{x})", f"det({x})"]
    for x, y in itertools.combinations(names, 2):
        out += [f"tr({x}*{y})", f"tr({x}**2*{y}**2)"]
    return out


def n4_abc_q1() -> NullconeCertificate:
    subs = []
    for m in (2, 3):
        subs += [[f"a{m}", f"-I*d{m}"], [f"c{m}", f"I*f{m}"], [f"b{m}", "0"], [f"e{m}", "0"]]
    claims = _vanish(_h3(["A1", "A2", "A3"]))
    for p in itertools.permutations(("A1", "A2", "A3")):
        claims.append(_mz("*".join(p)))
    return NullconeCertificate("N4_ABC_Q1", 4, {"A1": "K3;0:1", "A2": "generic", "A3": "generic"},
                               [Branch("A1 = Q1", subs, claims)],
                               "three 4x4 matrices, one of them conjugate to Q1")


_DISPLAYED = [
    ["b11", "b12", "I*b12", "-I*b11"],
    ["b12 - q", "b22", "I*b22", "-I*b12 + I*q"],
    ["I*b12 - I*q", "I*b22", "-b22", "b12 - q"],
    ["-I*b11", "-I*b12", "b12", "-b11"],
]


def n4_abc_q2() -> NullconeCertificate:
    """All three matrices of type Q2; B1 = Q2 after conjugation.

    2 B1 B2 B3 = M has the displayed shape, M - M^T = q K and
    M + M^T = 2 B1 (B2 B3 - B3 B2).  So q = 0 makes M symmetric, and
    M = B1 (B2 B3 - B3 B2) = 0 because any pair with one member of type Q2
    commutes (last branch, where B2 plays the role of Q2).
    """
    subs = _Q2_SUBS(2) + _Q2_SUBS(3)
    lets = {"M": "2*B1*B2*B3", "q": "tr(B2*B3)/2",
            "b11": "entry(M,1,1)", "b12": "entry(M,1,2)", "b22": "entry(M,2,2)"}
    hyp = _h3(["B1", "B2", "B3"])
    hyp.remove("tr(B2*B3)")  # this is q, not forced by the substitutions
    first = Branch(
        "B1 = Q2",
        subs,
        _vanish(hyp) + [
            _mz("B1*B2 - B2*B1", "B1 B2 = B2 B1"),
            _mz("B1*B3 - B3*B1", "B1 B3 = B3 B1"),
            Claim("matrix_equals", {"lhs": "M", "rhs": _DISPLAYED}, "2 B1 B2 B3 = displayed matrix"),
            Claim("matrix_equals", {"lhs": "M - transpose(M)", "rhs": _Q_PART},
                  "M - M^T is q times a constant matrix"),
            _mz("M + transpose(M) - 2*B1*(B2*B3 - B3*B2)", "M + M^T = 2 B1 (B2 B3 - B3 B2)"),
        ],
        lets=lets,
    )
    # q is linear in e3 with coefficient b2 + i f2; solving it exhibits q = 0 directly
    second = Branch(
        "B1 = Q2, q = 0 solved for e3",
        subs + [["e3", "-(I*b2*f3 - 2*c2*c3 + e2*b3 + I*e2*f3 + I*f2*b3 - 2*f2*f3)/(b2 + I*f2)"]],
        [
            _pz("q", "q = tr(B2 B3)/2 = 0"),
            _mz("M - transpose(M)", "B1 B2 B3 is symmetric"),
            _pz("tr(B2**2*B3**2)", "hypothesis tr(B2^2 B3^2) = 0 holds"),
            _mz("M - B1*(B2*B3 - B3*B2)", "2 B1 B2 B3 = B1 (B2 B3 - B3 B2)"),
        ],
        nonzero=["b2 + I*f2"],
        lets=lets,
    )
    third = Branch(
        "B2 = Q2: B2 B3 = B3 B2",
        _Q2_SUBS(3),
        _vanish(["sigma(2,B3)", "det(B3)", "tr(B2*B3)", "tr(B2**2*B3**2)"])
        + [_mz("B2*B3 - B3*B2", "B2 B3 = B3 B2")],
        base={"B2": "K4:mu=0"},
    )
    return NullconeCertificate("N4_ABC_Q2", 4, {"B1": "K4:mu=0", "B2": "generic", "B3": "generic"},
                               [first, second, third],
                               "three 4x4 matrices, all conjugate to Q2: B1 B2 B3 = 0")


_Q_PART = [
    ["0", "q", "I*q", "0"],
    ["-q", "0", "0", "I*q"],
    ["-I*q", "0", "0", "-q"],
    ["0", "-I*q", "q", "0"],
]


# n = 5 -----------------------------------------------------------------------------------

_H5 = ["sigma(2,A1)", "sigma(4,A1)", "sigma(2,A2)", "sigma(4,A2)", "tr(A1*A2)",
       "tr(A1**2*A2**2)", "tr(A1**3*A2)", "tr(A1*A2**3)", "tr(A1**4*A2**2)", "tr(A1**2*A2**4)"]


def n5_q1() -> NullconeCertificate:
    branches = []
    for delta in (1, -1):
        ds = "" if delta == 1 else "-"
        head = [["a2", "-I*e2"], ["d2", f"I*i2 + {ds}I*(c2 - I*h2)"]]
        on_trace = ["tr(A1*A2)", "tr(A1**2*A2**2)", "sigma(2,A1)", "sigma(4,A1)",
                    "tr(A1**3*A2)", "tr(A1**4*A2**2)"]
        branches.append(Branch(
            f"delta={delta}, f2 = -delta i g2",
            head + [["f2", f"{'-' if delta == 1 else ''}I*g2"]],
            _vanish(on_trace + ["tr(A1**2*A2**4)"]) + [_mz("A1**3")]
            + [_mz(f"A1*A2**{j}*A1") for j in range(1, 5)],
        ))
        branches.append(Branch(
            f"delta={delta}, c2 = i h2",
            head + [["c2", "I*h2"], ["b2", "0"], ["j2^2", "-f2**2 - g2**2"]],
            _vanish(_H5) + [_mz("A1*A2*A1"), _mz("A2*A1*A2"), _mz("A1**2*A2**2")],
        ))
    return NullconeCertificate("N5_Q1", 5, {"A1": "K3;0:2", "A2": "generic"}, branches,
                               "n = 5, d = 2 with A1 = Q1, both signs delta")


def n5_q3() -> NullconeCertificate:
    subs = [["g2", "I*a2 + c2 + I*j2"], ["b2", "-I*i2"],
            ["j2", "I*c2 + (1 + I)/2*e2 - (1 - I)/2*h2"], ["e2", "-I*h2"],
            ["d2", "0"], ["f2", "0"]]
    claims = _vanish(_H5) + [
        _pz("tr(A1**3*A2**3)", "tr(A1^3 A2^3) = 0"),
        _mz("A1*A2*A1*A2*A1"),
    ]
    for e in itertools.product(range(1, 5), repeat=4):
        if sum(e) > 4:
            claims.append(_mz(f"A1**{e[0]}*A2**{e[1]}*A1**{e[2]}*A2**{e[3]}"))
    return NullconeCertificate("N5_Q3", 5, {"A1": "K5", "A2": "generic"},
                               [Branch("A1 = Q3", subs, claims)],
                               "n = 5, d = 2 with A1 = Q3")


def n5_q2() -> NullconeCertificate:
    subs = [["a2", "-I*b2 - I*f2 + h2"]]
    claims = [_pz("tr(A1*A2)", "hypothesis tr(A1*A2) = 0 holds"),
              _mz("A1**2"), _mz("A1*A2*A1")]
    return NullconeCertificate("N5_Q2", 5, {"A1": "K4:mu=0;0:1", "A2": "generic"},
                               [Branch("A1 = Q2", subs, claims)],
                               "n = 5, d = 2 with A1 = Q2 (A2 also of type Q2)")


def builtin_certificates() -> list[NullconeCertificate]:
    return [n3_trabc(), n3_induction(4), n4_q1(), n4_q2(), n4_abc_q1(), n4_abc_q2(),
            n5_q1(), n5_q3(), n5_q2()]


def certificate_by_name(name: str) -> NullconeCertificate:
    for c in builtin_certificates():
        if c.name == name:
            return c
    names = ", ".join(c.name for c in builtin_certificates())
    raise UnsupportedCase(f"no certificate named {name!r}; known: {names}")


CERTIFICATES_FOR_CASE = {
    "A": ["N3_TRABC", "N3_INDUCTION"],
    "B": ["N4_Q1", "N4_Q2"],
    "C": ["N4_Q1", "N4_Q2", "N4_ABC_Q1", "N4_ABC_Q2"],
    "D": ["N5_Q1", "N5_Q3", "N5_Q2"],
}
