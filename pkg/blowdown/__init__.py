# Octodp — Blow-down Package
