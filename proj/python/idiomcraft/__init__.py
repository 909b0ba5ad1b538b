"""Idiom crowdsourcing game engine: matcher, scoring, game days, analytics and simulator."""

import json
import os
from pathlib import Path

from . import _idiomcraft
from ._idiomcraft import (
    GameError,
    IdiomPattern,
    LemmaDictionary,
    classify,
    effective_scores,
    find_candidate_sentences,
    level_for,
    lint_catalogs,
    locate,
    parse_idiom_line,
    parse_pattern,
    tokenize,
    update_balance,
)

__all__ = [
    "Game",
    "GameError",
    "IdiomPattern",
    "LemmaDictionary",
    "classify",
    "data_dir",
    "dictionary",
    "effective_scores",
    "find_candidate_sentences",
    "level_for",
    "lint_catalogs",
    "locate",
    "parse_idiom_line",
    "parse_pattern",
    "run_sim",
    "tokenize",
    "update_balance",
]


def data_dir():
    """IDIOMCRAFT_DATA_DIR, else the data shipped inside the package."""
    env = os.environ.get("IDIOMCRAFT_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def dictionary(language="en"):
    return LemmaDictionary.from_file(str(data_dir() / "lemmas" / f"{language}.tsv"), language)


class Game:
    """One language's engine. Times are local 'YYYY-MM-DDTHH:MM:SS' strings."""

    def __init__(self, language="en", log_path=None, scoring="hysteresis"):
        self._g = _idiomcraft.Game(str(data_dir()), language, None if log_path is None else str(log_path), scoring)

    def register_player(self, player, name, at):
        return json.loads(self._g.register_player(player, name, at))

    def add_idiom(self, line, at):
        return self._g.add_idiom(line, at)

    def schedule_idiom(self, date, idiom_id, at):
        return json.loads(self._g.schedule_idiom(date, idiom_id, at))

    def open_day(self, date, idiom_id, at, seed=0):
        return json.loads(self._g.open_day(date, idiom_id, at, seed))

    def close_day(self, date, at):
        return json.loads(self._g.close_day(date, at))

    def submit(self, player, text, idiomatic, at):
        return json.loads(self._g.submit(player, text, idiomatic, at))

    def review(self, reviewer, submission_id, verdict, at):
        return json.loads(self._g.review(reviewer, submission_id, verdict, at))

    def next_for(self, reviewer, date):
        return self._g.next_for(reviewer, date)

    def start_happy_hour(self, moderator, at):
        return self._g.start_happy_hour(moderator, at)

    def ban(self, moderator, player, reason, at):
        self._g.ban(moderator, player, reason, at)

    def unban(self, moderator, player, reason, at):
        self._g.unban(moderator, player, reason, at)

    def leaderboard(self, date):
        return json.loads(self._g.leaderboard(date))

    def day_stats(self, date):
        return json.loads(self._g.day_stats(date))

    def export(self, format="jsonl", include_excluded=False):
        return self._g.export(format, include_excluded)

    def state_hash(self):
        return self._g.state_hash()

    def events(self):
        return self._g.events()


def run_sim(**kwargs):
    """Simulator run; returns jsonl, csv, state_hash and the serialized event log."""
    return _idiomcraft.run_sim(str(data_dir()), **kwargs)
