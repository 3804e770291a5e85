# Octodp — Pipeline Stages Package
