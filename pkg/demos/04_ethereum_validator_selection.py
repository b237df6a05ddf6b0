"""Could a delay function replace RANDAO for Ethereum proposer selection?

Plugging in published figures: cloud FPGAs give roughly a 2.5x speedup
over optimized CPUs at about 0.00046 USD/s (1.65 USD/hour), and per-block
MEV runs ~50 USD at the median with four-digit spikes. The economically
secure delay comes out in days, not the 12 seconds a slot allows.
"""

from esdp import linear_threshold
from esdp.casestudies import case4_ethereum

SPEEDUP = 2.5
COST_RATE = 0.00046  # USD/s, rounded cloud-FPGA rental

print("Required delay against MEV-motivated manipulation:")
for mev in (50.0, 500.0, 10_000.0):
    t_star = linear_threshold(SPEEDUP, COST_RATE, mev)
    print(f"  MEV {mev:8.0f} USD -> {t_star:12.0f} s "
          f"= {t_star / 86400:7.1f} days")

print()
for label, value, unit in case4_ethereum().headlines:
    print(f"  {label}: {value:.6g} {unit}")

print("\nA 12-second slot cannot carry a multi-day delay: on its own, a "
      "delay\nfunction cannot price out MEV here; it needs protocol-level "
      "help\n(encrypted mempools, MEV redistribution, threshold "
      "evaluation).")
