"""Write the curve data behind every comparison figure to ./demo_figures.

Each panel is a two-column CSV (volume, area); manifest.json says which
curve is which. Any plotting tool can draw them.
"""
import json
from pathlib import Path

from isoyamabe.figures import write_figures

out = Path("demo_figures")
write_figures(out, samples=100)
manifest = json.loads((out / "manifest.json").read_text())
for name, fig in manifest.items():
    print(f"{name}: {fig['title']} ({len(fig['panels'])} panels)")
