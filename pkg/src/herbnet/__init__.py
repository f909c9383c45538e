"""Proof nets for prenex first-order classical logic.

Parsing and typing of expansion-tree terms, switching-based correctness,
sequentialization into an annotated sequent calculus, and weakly normalizing
cut elimination with pluggable duplication strategies.
"""

__version__ = "0.1.0"
