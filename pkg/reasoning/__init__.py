"""
Reasoning over meadow terms: the decision procedure for characteristic-zero
cancellation meadows and model-level law checking.
"""
