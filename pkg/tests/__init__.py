"""
Test suite for Phishing Detection System
"""

