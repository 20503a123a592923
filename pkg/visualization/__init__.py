"""
DOT export and matplotlib drawings of sequents and proofs.
"""
