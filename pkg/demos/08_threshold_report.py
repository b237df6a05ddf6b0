"""Putting it together: one report, every active attack surface.

A scenario bundles the economics with its modifiers; the report evaluates
each activated condition, names the binding one, and its maximum is the
Economically Secure Delay Parameter (ESDP): the smallest delay at which
every modeled condition certifies the round.
"""

from esdp import EconomicEnvironment, Exponential, Scenario, esdp
from esdp.scenario_io import serialize_scenario

scenario = Scenario(
    env=EconomicEnvironment(speedup=3.0, cost_rate=0.05, honest_delay=600.0),
    reward=Exponential(10.0),
    grinding_size=8,             # attacker can try 8 candidate seeds
    grinding_cost_exponent=0.5,  # on partially shared hardware
    abort_probability=0.25,      # leader suppresses 1 in 4 unfavorable draws
    coalition_size=3,            # three operators pool costs
    protocol_means=(10.0, 25.0, 40.0),  # one beacon feeds three protocols
    rounds=5,
)

report = esdp(scenario, candidate_delay=scenario.env.honest_delay)
print("Required delay per security condition:")
for name, value in sorted(report.required_delays.items(),
                          key=lambda item: item[1]):
    marker = "  <- binding" if name == report.binding_condition else ""
    print(f"  {name:>12}: {value:8.1f} s{marker}")
print(f"\nESDP = {report.esdp:.1f} s")
print(f"Configured delay {report.evaluated_delay:.0f} s is "
      f"{'SECURE' if report.secure else 'INSECURE'} against the full set.")

print("\nThe same scenario as a file for the command line "
      "(`esdp threshold <file> --delay 600`):\n")
print(serialize_scenario(scenario))
