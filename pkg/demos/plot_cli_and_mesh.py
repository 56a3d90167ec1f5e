"""
Reports, tables and meshes from the command line
================================================

The ``varsurf`` command writes JSON reports, prints them as tables and
samples any step on a grid for viewing.  Here it is driven in-process.
"""

import tempfile
from pathlib import Path

from varsurf.cli import main

work = Path(tempfile.mkdtemp())
report = work / "hump.json"

main(["run", "--surface", "hump", "--steps", "1", "--out", str(report)])
main(["run", "--resume", str(report), "--steps", "1", "--out", str(report)])
main(["table", str(report)])

###############################################################################
# Step 2 as an OBJ quad mesh, 17 x 17 vertices.

mesh = work / "hump2.obj"
main(["export-mesh", str(report), "--step", "2", "--res", "17", "--out", str(mesh)])
lines = mesh.read_text().splitlines()
print(sum(l.startswith("v ") for l in lines), "vertices,", sum(l.startswith("f ") for l in lines), "faces")
