"""Clifford-algebra kernel: paravectors, Vahlen matrices, Dirac representations, twistors."""
