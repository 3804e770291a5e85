# Octodp — Polytope & Triangulations Package
