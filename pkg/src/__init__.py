"""
Normal Reduction Numbers
Exact q(nI) sequences, integral closure filtrations and resolution cycles
"""

__version__ = '1.0.0'
__author__ = "Normal Reduction Team"
