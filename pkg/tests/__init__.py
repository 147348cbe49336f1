"""
Test suite for the LQF Logic library.

Unit tests per module plus command-line tests driven through click's runner.
"""
