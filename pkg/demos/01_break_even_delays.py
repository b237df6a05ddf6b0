"""How long must a delay function run before attacking stops paying?

An attacker with a hardware speedup finishes T seconds of honest work in
T/speedup seconds and pays cost_rate per second while running. Against a
reward worth V, the attack nets V - cost_rate*T/speedup, so profit dies
exactly at T = (speedup/cost_rate) * V. With a 3x speedup rented at
0.05 USD/s that is one minute of delay per dollar of reward.
"""

from esdp import expected_profit, linear_threshold
from esdp.casestudies import case1_profit_curves

SPEEDUP = 3.0
COST_RATE = 0.05  # USD per second of adversarial running time

print("Break-even delay per reward level (speedup 3x, 0.05 USD/s):")
for reward in (10.0, 50.0, 100.0):
    t_star = linear_threshold(SPEEDUP, COST_RATE, reward)
    print(f"  reward {reward:6.1f} USD -> {t_star:7.0f} s "
          f"({t_star / 60:5.1f} min)")

print("\nExpected attack profit at a few delays (USD):")
print(f"{'delay (s)':>10} {'V=10':>8} {'V=50':>8} {'V=100':>8}")
for delay in (2.0, 5.0, 60.0, 600.0, 3000.0, 6000.0):
    profits = [expected_profit(delay, SPEEDUP, COST_RATE, v)
               for v in (10.0, 50.0, 100.0)]
    print(f"{delay:>10.0f} " + " ".join(f"{p:8.2f}" for p in profits))

print("\nA 2-5 second delay leaves every one of these attacks deeply "
      "profitable;\nminutes-scale delays are where security starts.")

curve = case1_profit_curves()
print(f"\n(case study table: {len(curve.rows)} rows, regenerate via "
      f"`esdp casestudy --id 1 --svg`)")
