"""
Parsing, proof files, random generation and CLI configuration.
"""
