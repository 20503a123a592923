"""
Formulas, structures, sequents, rule schemas and proof checkers.
"""
