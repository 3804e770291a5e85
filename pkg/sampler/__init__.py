# Octodp — Moduli Sampler Package
