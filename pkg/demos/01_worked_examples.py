"""
Testing real data sets for uniformity
=====================================

Three classic small data sets: seizure onset times of an epileptic patient,
vanishing bearings of 13 homing pigeons, and Kamiokande neutrino arrival
directions. Each is tested with the Gram-Charlier P-value and, for
comparison, with exact quadrature of the null density.
"""

from raospacing import ingest, spacing_test

datasets = {
    "epileptic seizures": [5, 10, 10, 12, 17, 85, 90, 99, 100, 110, 153, 233, 235, 296, 331],
    "pigeon homing": [20, 135, 145, 165, 170, 200, 300, 325, 335, 350, 350, 350, 355],
    "Kamiokande (12)": [30, 36, 60, 64, 76, 98, 136, 140, 182, 216, 244, 270],
    "Kamiokande (11)": [30, 36, 60, 64, 76, 98, 140, 182, 216, 244, 270],
}

print(f"{'data':<20} {'n':>3} {'U (deg)':>10} {'p (GC)':>8} {'p (exact)':>10}")
for name, angles in datasets.items():
    sample = ingest(angles, "degrees")
    gc = spacing_test(sample, method="gram_charlier")
    ex = spacing_test(sample, method="exact_quadrature")
    print(f"{name:<20} {gc.n:>3} {gc.statistic_deg:>10.4f} {gc.p_value:>8.4f} {ex.p_value:>10.4f}")

# Only the seizure data reject uniformity at the 5% level. The pigeon data
# fall between the 5% and 10% levels.
