"""Word calculus for complete gentle presentations.

Strings and bands as words, their modules as finite presentations,
generalised words, the complexes they index, and the resolution /
homology-word algorithms connecting the two sides, with an exact
finite-field oracle for verification.
"""

__version__ = "0.1.0"
