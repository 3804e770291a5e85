# Octodp — Octanomial Model Package
