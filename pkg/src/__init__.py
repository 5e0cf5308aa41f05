"""
semifactor

Exact and asymptotic enumeration of factorisations of the complete bipartite
graph K_{m,n} into semiregular factors, with the oracles and checks that
certify the estimates at small sizes.
"""

__version__ = "0.1.0"
