"""Bridge endplay generators.

Seats are N, E, S, W in clockwise order.  The declarer S plays both her own
cards and the dummy's.  A card is ``(suit, rank)`` with suits 0..3 and ranks
0..n-1.  The model contains every split of the opponents' remaining cards
between E and W, since S cannot tell them apart; the actual deal is the first
state.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ModelError
from ..icgs import Model, ModelBuilder
from ..logic import Formula, parse

N, E, S, W = range(4)
SEATS = "NESW"
SUITS = "cdhs"
WAIT = "wait"

Card = tuple[int, int]


def card_name(card: Card) -> str:
    return f"{SUITS[card[0]]}{card[1]}"


@dataclass(frozen=True)
class BridgeInstance:
    """``hands`` is indexed by seat; ``played`` holds the cards used up
    before the endplay starts."""

    n: int
    k: int
    seed: int = 0
    hands: Optional[tuple[frozenset, ...]] = None
    played: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ModelError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.hands is None:
            hands, played = deal(self.n, self.k, self.seed)
            object.__setattr__(self, "hands", hands)
            object.__setattr__(self, "played", played)
        self.check()

    def check(self) -> None:
        deck = {(s, r) for s in range(4) for r in range(self.n)}
        if len(self.hands) != 4 or any(len(h) != self.k for h in self.hands):
            raise ModelError(f"each of the four hands needs exactly {self.k} cards")
        seen = set(self.played)
        for h in self.hands:
            if seen & h:
                raise ModelError("a card is dealt twice")
            seen |= h
        if seen != deck:
            raise ModelError("hands and played cards must make up the whole deck")


def deal(n: int, k: int, seed: int) -> tuple[tuple[frozenset, ...], frozenset]:
    """A uniformly random deal: ``k`` cards per seat, the rest used up."""
    deck = [(s, r) for s in range(4) for r in range(n)]
    random.Random(seed).shuffle(deck)
    hands = tuple(frozenset(deck[i * k:(i + 1) * k]) for i in range(4))
    return hands, frozenset(deck[4 * k:])


def controller(seat: int) -> int:
    """The seat choosing the card: S also plays for the dummy."""
    return S if seat == N else seat


def trick_winner(trick) -> int:
    led = trick[0][1][0]
    return max((card[1], seat) for seat, card in trick if card[0] == led)[1]


def follow_suit(hand: frozenset, led: Optional[int]) -> list[Card]:
    if led is not None:
        same = sorted(c for c in hand if c[0] == led)
        if same:
            return same
    return sorted(hand)


def win_formula() -> Formula:
    return parse("<<S>> F win")


def _splits(inst: BridgeInstance):
    """Every E/W split of the opponents' cards, the actual deal first."""
    hands = inst.hands
    pool = sorted(hands[E] | hands[W])
    first = tuple(hands)
    yield first
    for east in itertools.combinations(pool, inst.k):
        east = frozenset(east)
        if east == hands[E]:
            continue
        h = list(hands)
        h[E], h[W] = east, frozenset(pool) - east
        yield tuple(h)


class _Explorer:
    """Breadth-first construction shared by both variants."""

    def __init__(self, inst: BridgeInstance):
        self.inst = inst
        self.index: dict = {}
        self.order: list = []
        self.edges: dict = {}

    def add(self, state) -> None:
        if state not in self.index:
            self.index[state] = len(self.order)
            self.order.append(state)

    def run(self, initial, moves) -> None:
        for s in initial:
            self.add(s)
        i = 0
        while i < len(self.order):
            state = self.order[i]
            table = moves(state)
            self.edges[state] = table
            for succ in table.values():
                self.add(succ)
            i += 1

    def build(self, protocol, observation, win) -> Model:
        b = ModelBuilder(list(SEATS), [WAIT])
        b.declare_atom("win")
        names = {s: f"s{i}" for i, s in enumerate(self.order)}
        for s in self.order:
            b.add_state(names[s], ["win"] if win(s) else [])
        for s in self.order:
            for seat in range(4):
                b.set_protocol(SEATS[seat], names[s], protocol(s, seat))
            for joint, succ in self.edges[s].items():
                b.add_transition(names[s], joint, names[succ])
        groups: dict = {}
        for s in self.order:
            groups.setdefault(observation(s), []).append(names[s])
        for members in groups.values():
            b.add_epistemic_block("S", members)
        return b.build()


def _terminal(state) -> bool:
    hands, trick = state[0], state[1]
    return not trick and not any(hands)


def _wins(k: int):
    def win(state) -> bool:
        return _terminal(state) and state[2][0] * 2 > k
    return win


def gen_bridge(inst: BridgeInstance) -> Model:
    """The standard endplay model, turn-based and lockstep for S.

    A state is ``(hands, trick, score, turn)``: ``trick`` is the sequence of
    ``(seat, card)`` pairs played in the current trick, ``score`` the trick
    counts of N-S and E-W.  A full trick is shown in its own state before
    being cleared; its winner leads next.  S observes her hand, the dummy's
    hand, the used-up cards, the trick, the score and whose turn it is.
    """
    def protocol(state, seat):
        hands, trick, _, turn = state
        if len(trick) == 4 or _terminal(state) or controller(turn) != seat:
            return [WAIT]
        led = trick[0][1][0] if trick else None
        return [card_name(c) for c in follow_suit(hands[turn], led)]

    def moves(state):
        hands, trick, score, turn = state
        if _terminal(state):
            return {(WAIT,) * 4: state}
        if len(trick) == 4:
            w = trick_winner(trick)
            sc = list(score)
            sc[w % 2] += 1
            return {(WAIT,) * 4: (hands, (), tuple(sc), w)}
        table = {}
        for card in follow_suit(hands[turn], trick[0][1][0] if trick else None):
            joint = [WAIT] * 4
            joint[controller(turn)] = card_name(card)
            h = list(hands)
            h[turn] = hands[turn] - {card}
            table[tuple(joint)] = (tuple(h), trick + ((turn, card),), score, (turn + 1) % 4)
        return table

    def observation(state):
        hands, trick, score, turn = state
        return hands[S], hands[N], hands[E] | hands[W], trick, score, turn

    ex = _Explorer(inst)
    ex.run([(h, (), (0, 0), S) for h in _splits(inst)], moves)
    return ex.build(protocol, observation, _wins(inst.k))


def gen_bridge_absentminded(inst: BridgeInstance) -> Model:
    """Endplay with a declarer who does not watch the table mid-trick.

    S sees only the cards her side has put into the current trick; she does
    not see the opponents' cards or whose turn it is until the trick is
    cleared.  At any step S may lay one card from her hand or the dummy's
    (each at most once per trick) or wait, possibly in parallel with an
    opponent.  Opponents play in clockwise order from the leader, follow
    suit, and wait for the leader's card when the leader is N or S.

    A state is ``(hands, trick, score, leader)`` where ``trick`` maps seats
    to cards as a sorted tuple of pairs.
    """
    def opponent_to_move(state) -> Optional[int]:
        hands, trick, _, leader = state
        played = dict(trick)
        if len(played) == 4 or _terminal(state):
            return None
        if leader not in played and controller(leader) == S:
            return None
        for i in range(4):
            seat = (leader + i) % 4
            if seat in (E, W) and seat not in played:
                return seat
        return None

    def led_suit(state) -> Optional[int]:
        played = dict(state[1])
        card = played.get(state[3])
        return None if card is None else card[0]

    def declarer_options(state) -> list:
        hands, trick, _, _ = state
        played = dict(trick)
        options = []
        for seat in (S, N):
            if seat not in played:
                options.extend((seat, c) for c in sorted(hands[seat]))
        return options

    def protocol(state, seat):
        if seat == S:
            return [WAIT] + [card_name(c) for _, c in declarer_options(state)]
        if seat == N:
            return [WAIT]
        if opponent_to_move(state) == seat:
            return [card_name(c) for c in follow_suit(state[0][seat], led_suit(state))]
        return [WAIT]

    def moves(state):
        hands, trick, score, leader = state
        if _terminal(state):
            return {(WAIT,) * 4: state}
        if len(trick) == 4:
            w = trick_winner(sorted(trick, key=lambda sc: (sc[0] - leader) % 4))
            sc = list(score)
            sc[w % 2] += 1
            return {(WAIT,) * 4: (hands, (), tuple(sc), w)}
        opp = opponent_to_move(state)
        opp_choices = [None] if opp is None else \
            follow_suit(hands[opp], led_suit(state))
        s_choices = [None] + declarer_options(state)
        table = {}
        for s_choice in s_choices:
            for o_card in opp_choices:
                h = list(hands)
                played = dict(trick)
                joint = [WAIT] * 4
                if s_choice is not None:
                    seat, card = s_choice
                    h[seat] = hands[seat] - {card}
                    played[seat] = card
                    joint[S] = card_name(card)
                if o_card is not None:
                    h[opp] = hands[opp] - {o_card}
                    played[opp] = o_card
                    joint[opp] = card_name(o_card)
                table[tuple(joint)] = (tuple(h), tuple(sorted(played.items())), score, leader)
        return table

    def observation(state):
        hands, trick, score, _ = state
        mine = tuple((seat, c) for seat, c in trick if seat in (N, S))
        return hands[S], hands[N], hands[E] | hands[W] | frozenset(
            c for seat, c in trick if seat in (E, W)), mine, score

    ex = _Explorer(inst)
    ex.run([(h, (), (0, 0), S) for h in _splits(inst)], moves)
    return ex.build(protocol, observation, _wins(inst.k))
