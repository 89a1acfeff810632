"""
Verification campaigns
======================

Each campaign enumerates a family of small graphs and compares a structural
claim with the oracle.  The same runs are available from the command line as
``skewrank verify <campaign>``.
"""

from skewrank.verify import CAMPAIGNS, run_verification

for name in CAMPAIGNS:
    print(f"{name:17s} {CAMPAIGNS[name].about}")

for name, params in [("lem-zf", {"nmax": 5}),
                     ("thm-mr4", {"nmax": 6}),
                     ("thm-kpath", {"nmax": 7, "kmax": 2}),
                     ("lem-union", {"trials": 50})]:
    print(run_verification(name, params).summary())
