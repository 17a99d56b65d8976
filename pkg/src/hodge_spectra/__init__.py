"""Discrete Hodge Laplacian spectra on p-forms over simplicial tori and spheres.

Modules: complex (meshes, coboundaries, Betti numbers), metric (piecewise
constant metrics, conformal factors, cigar profile), assembly (Whitney mass
and stiffness matrices), eigensolve (exact-form and full spectra), analytic
(closed-form interval, sphere and product spectra), experiments and cli.
"""
__version__ = "0.1.0"
