"""
JSON reports from the command line
==================================

Every subcommand writes one JSON report.  With a fixed seed the bytes are
reproducible.
"""

# %%
import subprocess
import sys

cmd = [sys.executable, "-m", "cornerblowup", "verify-order", "--nbody", "N=2,d=1", "--curves", "100", "--seed", "7"]
a = subprocess.run(cmd, capture_output=True, check=True).stdout
b = subprocess.run(cmd, capture_output=True, check=True).stdout
print(a.decode()[:400])
print("identical:", a == b)
