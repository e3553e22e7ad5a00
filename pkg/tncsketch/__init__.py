"""
Approximate tensor network contraction by sketching.

The public entry points live in the subpackages: tncsketch.tensor for sparse
tensors, tncsketch.network for networks and their normalization,
tncsketch.estimators for the sketch estimators and tncsketch.apps for the
join-size and triangle front-ends.
"""

__version__ = "0.1.0"
