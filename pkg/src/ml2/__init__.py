"""Proof-checker kernel for two-dimensional Martin-Lof type theory.

The package has three layers:

* ``syntax`` / ``kernel`` / ``derived``: the syntactic side. Nameless terms,
  bidirectional type checking, normalization by oriented rewriting, and a
  library of derived constructions (transport, path composition, identity
  contexts, lifting, canonical eliminators) emitted as checkable core terms.
* ``twocat`` / ``gpdmodel``: the semantic side. Finite locally groupoidal
  2-categories with structure certificates and exhaustive verifiers, plus a
  concrete model built from finite groupoids and split families.
* ``parser`` / ``cli``: the ``.ml2`` surface language and the command-line
  driver.
"""

__version__ = "0.1.0"
