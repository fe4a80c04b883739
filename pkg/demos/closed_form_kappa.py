"""
Order of convexity from closed-form rules
=========================================

``kappa_closed_form`` tries each rule in turn and reports the one that
applied, the preconditions it checked, and any other rule that also
applied with its value.
"""

from hypconv.convexity import convexity_predicates, kappa_closed_form, lower_bound_for
from hypconv.hyp2f1 import Params

points = [
    (1, 1, 3),  # a = 1, c >= 2: the infimum sits at z = -1
    (1, 1, 1.5),  # a = 1, small c
    (0.75, 1.5, 2),  # below the balance line c = a + b
    (0.5, 0.5, 1),  # inside a window where W is unbounded below
    (0.5, 0.5, 3),  # exact value at z = -1, plus a weaker explicit bound
    (0.9, 0.95, 0.97),  # no rule applies
]
for abc in points:
    kappa, match = kappa_closed_form(Params(*abc))
    print("%-18s %-34s rule %s" % (abc, kappa, match.rule))
    for rule, value in match.also_fired:
        print("%18s also %s = %.6f" % ("", rule, value))

print(lower_bound_for(Params(0.5, 0.5, 2)))

# Yes/no convexity tests that need no value of kappa.
for abc in [(0.5, 0.5, 1.75), (0.5, 1.5, 1.9), (1, 1, 2)]:
    print(abc, convexity_predicates(Params(*abc)))
