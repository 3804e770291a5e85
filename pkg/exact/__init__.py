# Octodp — Exact Arithmetic Package
