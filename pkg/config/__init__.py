"""
Configuration for the meadow toolkit.
"""
