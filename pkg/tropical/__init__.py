# Octodp — Tropical Arrangements Package
