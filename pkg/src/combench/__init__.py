"""combench: a workbench for seven combinatorial constructions.

Subpackages and modules:

* :mod:`combench.graphs` — weighted graphs, geodesic metrics, epsilon-nets
* :mod:`combench.tda` — Vietoris-Rips / witness / Dowker filtrations,
  persistence diagrams, bottleneck distance
* :mod:`combench.forcing` — zero-forcing with contingent and leaky variants
* :mod:`combench.hypercut` — cardinality-based hypergraph s-t cuts
* :mod:`combench.elimination` — edge/vertex elimination on linearized DAGs
* :mod:`combench.reversal` — data-flow reversal schedules and checkpointing
* :mod:`combench.asynchrony` — delayed block iteration spectra
* :mod:`combench.express` — binary-matrix match probabilities
"""

__version__ = "0.1.0"
