"""With an altruist-started chain, the altruist's owner can gain linearly by leaving."""
from irmatch.experiments import ExperimentConfig, run_appc
from irmatch.generators import gen_long_chain
from irmatch.ownership import PlayerProfile

for n in (180, 900, 1800):
    agg = run_appc(ExperimentConfig(gen_long_chain(n), PlayerProfile.uniform(2),
                                    trials=200, seed=3)).aggregates
    print(f"n={n:5d} good layers {agg['mean_good_layers']:7.1f} "
          f"(expect {agg['expected_good_layers']:.1f}), share {agg['mean_share']:6.1f}, "
          f"gap {agg['mean_gap']:6.1f} vs n/72 = {agg['linear_gap_target']:.1f}")
