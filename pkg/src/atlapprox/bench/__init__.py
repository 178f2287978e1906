"""Model generators used by the experiments and the test-suite."""

from .bridge import BridgeInstance, deal, gen_bridge, gen_bridge_absentminded, win_formula
from .figures import m0, m1, m2, m3, m_vote
from .randgen import RandomParams, gen_random, make_lockstep, random_formula
from .voting import VotingInstance, gen_voting, initial_state, phi1, phi2

__all__ = [
    "BridgeInstance", "RandomParams", "VotingInstance", "deal", "gen_bridge",
    "gen_bridge_absentminded", "gen_random", "gen_voting", "initial_state",
    "m0", "m1", "m2", "m3", "m_vote", "make_lockstep", "phi1", "phi2",
    "random_formula", "win_formula",
]
