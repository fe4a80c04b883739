"""
Parameter scans from the command line
=====================================

The same calls as ``hypconv scan ...`` and ``hypconv kappa ...`` in a
shell, made through ``main`` so the demo runs in-process.
"""

from hypconv.cli import main

main(["kappa", "--a", "1", "--b", "1", "--c", "3", "--method", "both"])

# kappa along c for a = b = 1/2: unbounded below for small c, finite later.
main(["scan", "--a", "0.5", "--b", "0.5", "--c", "1:3:5"])

# Exit code 2: no closed-form rule covers this point.
print("exit code", main(["kappa", "--a", "0.9", "--b", "0.95", "--c", "0.97"]))

main(["classify", "--a", "0.5", "--b", "1.5", "--c", "1.9", "--json"])
