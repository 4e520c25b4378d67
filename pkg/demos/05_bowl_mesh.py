"""
Mesh of z (x^2 + y^2) = 1
-------------------------

Build the triangle mesh of z = 1/(x^2 + y^2) over [-5, 5]^2, with the
singular disk removed and heights clipped at 10, write it as OBJ and, if
matplotlib is available, render it.
"""

from pathlib import Path

from tzitzeica import MeshConfig, generate_mesh, write_mesh

mesh = generate_mesh(MeshConfig())
out = write_mesh(mesh, "obj", Path(__file__).with_name("bowl.obj"))
print(f"{len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles -> {out}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig = plt.figure(figsize=(6, 5))
    ax = fig.add_subplot(projection="3d")
    x, y, z = mesh.vertices.T
    ax.plot_trisurf(x, y, z, triangles=mesh.triangles, cmap="viridis", linewidth=0)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    fig.savefig(Path(__file__).with_name("bowl.png"), dpi=120)
    print("rendered bowl.png")
