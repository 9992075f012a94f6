"""Where a parameter vector lands, and what that means for equilibria.

Run:  python3 demos/01_parameter_regions.py
"""

from mospop import (
    basic_offspring_number,
    birth_threshold,
    classify,
    primary_region,
    validate,
)

CASES = [
    ("low births, no extra death", (1.5, 0.4, 0.5, 0.0, 0.0)),
    ("high births, linear death", (6.0, 0.5, 0.4, 0.6, 0.0)),
    ("high births, quadratic death", (1.0, 2.0, 0.5, 0.5, 0.5)),
    ("matched rates, no larval death", (1.0, 1.0, 1.0, 0.0, 0.0)),
    ("births exactly at threshold", (0.5, 2.0, 1.0, 0.5, 0.0)),
    ("small rates, contraction zone", (0.4, 0.3, 0.5, 0.2, 0.0)),
]

print("region tour")
print("=" * 64)
for label, args in CASES:
    p = validate(*args)
    lab = classify(p)
    r0 = basic_offspring_number(p)
    thr = birth_threshold(p)
    print(f"\n{label}")
    print(f"  params  alpha={p.alpha} beta={p.beta} mu={p.mu} d0={p.d0} d1={p.d1}")
    print(f"  region  {primary_region(p)}   r0={r0:.6g}  (threshold beta {thr:.6g})")
    extras = [
        name
        for name, flag in [
            ("theta", lab.in_theta),
            ("theta1", lab.in_theta1),
            ("theta2", lab.in_theta2),
            ("theta*", lab.in_theta_star),
            ("phi*", lab.in_phi_star),
            ("psi*", lab.in_psi_star),
        ]
        if flag
    ]
    if extras:
        print(f"  also in {', '.join(extras)}")

# a crude census: how the (beta, d0) plane splits at fixed alpha, mu
print("\n\nregion census over a 40x40 (beta, d0) grid, alpha=1, mu=0.8")
print("=" * 64)
counts = {}
for i in range(40):
    for j in range(40):
        beta = 0.05 + i * 0.05
        d0 = j * 0.025
        name = primary_region(validate(1.0, beta, 0.8, d0, 0.0))
        counts[name] = counts.get(name, 0) + 1
for name in sorted(counts):
    print(f"  {name:<12} {counts[name]:>5} cells")
print("(psi needs beta = mu exactly, so it shows up only if the grid hits it)")
