#!/usr/bin/env python3
"""
Facsum - exact summation reduction and factorial transforms
Description: Triangles, reduced row sums, rising/falling factorial transforms
and numeric verification of their integral and series representations
Version: 1.0.0

This is the main entry point for the Facsum application.
"""

from facsum.main import main

if __name__ == "__main__":
    main()
