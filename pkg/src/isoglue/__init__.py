"""Exact-arithmetic toolkit for even lattices with isometries.

Modules:
    intmat    -- integer/rational matrix kernel (HNF, SNF, solving)
    lattice   -- integral lattices, duals, complements, named lattices
    torsion   -- finite quadratic modules (discriminant forms) and their maps
    fingroup  -- finite matrix groups via stabilizer chains, double cosets
    definite  -- short vectors, automorphism groups, isometry, genus enumeration
    genus     -- genus bookkeeping and the Siegel mass formula
    glue      -- overlattices from glue maps, primitive embeddings, involutions
    engine    -- heart/head/spine extension machinery
    og10      -- the classification pipeline over ingested Leech-pair data
"""

__version__ = "0.1.0"
