# Simplicial-type depth functions for fuzzy numbers.
