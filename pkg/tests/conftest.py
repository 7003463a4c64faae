"""pytest configuration and package path setup."""
import os
import sys

# Ensure the project root is on sys.path for all tests
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
