"""planatlas: ground STRIPS domains, embed their transition graphs, plan on top.

The pipeline: :mod:`planatlas.pddl` parses and grounds a domain/problem pair,
:mod:`planatlas.graph` builds the bipartite fluent-action transition graph and
its diagnostics, :mod:`planatlas.embedding` lays the graph out in the plane,
:mod:`planatlas.planning` searches the induced state space, and
:mod:`planatlas.overlay` projects plan traces onto the layout.  The
:mod:`planatlas.service` package wraps it all in an HTTP/JSON service and
:mod:`planatlas.cli` in a command line.
"""

__version__ = "0.1.0"

SCHEMA_VERSION = 1
