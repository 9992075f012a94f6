"""Eigenvalues at the fixed points, and an audit of the closed-form types.

Run:  python3 demos/03_stability_types.py
"""

from mospop import (
    classify_fixed_point,
    declared_type_table,
    find_fixed_points,
    validate,
)


def fmt_eig(lam):
    if lam.imag == 0:
        return f"{lam.real:.10g}"
    return f"{lam.real:.10g}{lam.imag:+.10g}j"


def show_points(title, p):
    print(f"\n{title}")
    for pt in find_fixed_points(p).points:
        rep = classify_fixed_point(p, pt.location)
        eigs = ", ".join(fmt_eig(lam) for lam in rep.eigenvalues)
        moduli = ", ".join(f"{abs(lam):.6g}" for lam in rep.eigenvalues)
        print(f"  ({pt.location.x:.6g}, {pt.location.y:.6g}): {rep.type.value}")
        print(f"    eigenvalues {eigs}   moduli {moduli}")


show_points("births below threshold: extinction attracts",
            validate(1.5, 0.4, 0.5, 0.0, 0.0))
show_points("births above threshold: origin repels, interior point attracts",
            validate(6.0, 0.5, 0.4, 0.6, 0.0))

print("\n\nclosed-form type table vs computed moduli")
print("=" * 64)

CASES = [
    ("contraction zone, below threshold", (0.4, 0.3, 0.5, 0.2, 0.0)),
    ("contraction zone, above threshold (weak coupling)", (0.5, 0.8, 0.6, 0.0, 0.0)),
    ("contraction zone, above threshold (strong coupling)", (0.9, 2.0, 0.95, 0.05, 0.0)),
    ("exactly at the threshold", (0.5, 2.0, 1.0, 0.5, 0.0)),
]
for label, args in CASES:
    print(f"\n{label}: {args}")
    for row in declared_type_table(validate(*args)):
        declared = row.declared.value if row.declared else "(deferred)"
        verdict = "agrees" if row.agrees else "DISAGREES"
        print(f"  ({row.location.x:.6g}, {row.location.y:.6g}): "
              f"declared {declared}, computed {row.numeric.value} -> {verdict}")
        if row.note:
            print(f"    note: {row.note}")

print("""
The strong-coupling case is the interesting one: the table says saddle,
but both moduli are above 1, so the origin actually repels.  The flip
happens where alpha*beta crosses (2-mu)*(2-alpha-d0); the audit keeps
the closed-form claim and the computation side by side instead of
quietly overwriting one with the other.""")
