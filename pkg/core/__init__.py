"""
Core algebra for the meadow toolkit: models, terms, polynomials,
fraction normal forms and fracpairs.
"""
