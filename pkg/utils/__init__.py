# Octodp — Utils Package
