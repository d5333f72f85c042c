"""
Exact symbolic computations in the quantum matrix algebras O_q(M_{m,n}).
"""
__version__ = "0.1.0"
