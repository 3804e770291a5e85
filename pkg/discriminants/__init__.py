# Octodp — Discriminants Package
