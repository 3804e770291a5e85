# Octodp — Lines Package
