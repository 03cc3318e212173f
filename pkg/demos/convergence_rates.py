# convergence_rates.py
# The observable signal xi_t/t approaches the per-message rate psi0'(X)
# at the universal speed  E[(xi_t/t - psi0'(X))^2] = E[psi0''(X)] / t,
# whatever the noise family.  This script measures the left side by
# Monte Carlo for all seven families and compares it with the closed
# form on the right, reporting a z-score per (family, t) cell.

import levy_info as li

CASES = [
    ("Brownian", (), [(-1.0, 1.0), (1.0, 1.0)]),
    ("Poisson", (1.0,), [(0.0, 1.0), (0.6931471805599453, 1.0)]),
    ("Gamma", (2.0, 1.0), [(0.0, 1.0), (0.5, 1.0)]),
    ("VarianceGamma", (2.0,), [(0.0, 1.0), (0.5, 1.0)]),
    ("NegativeBinomial", (1.0, 0.5), [(0.0, 1.0), (0.3, 1.0)]),
    ("InverseGaussian", (1.0, 2.0), [(0.5, 1.0), (1.0, 1.0)]),
    ("NormalInverseGaussian", (2.0, 0.5, 1.0), [(-0.5, 1.0), (0.5, 1.0)]),
]

TIMES = [1.0, 4.0, 16.0]
N_PATHS = 20_000

print(f"{'family':<22} {'t':>5} {'mc mse':>10} {'theory':>10} {'z':>7}")
print("-" * 58)
for seed, (family, params, atoms) in enumerate(CASES):
    model = li.make_noise_model(family, params)
    prior = li.prior_from_atoms(atoms)
    study = li.convergence_study(model, prior, TIMES, N_PATHS, seed=20_260 + seed)
    for row in study.rows:
        if not row.quantity.startswith("mse"):
            continue
        t = float(row.quantity.split("t=")[1].rstrip("]"))
        print(f"{family:<22} {t:5.0f} {row.estimate:10.5f} "
              f"{row.reference:10.5f} {row.z:7.2f}")
    print("-" * 58)
print(f"each cell averages {N_PATHS} independent paths; |z| <= 3.5 expected")
