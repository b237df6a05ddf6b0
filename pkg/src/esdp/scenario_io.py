"""Scenario file grammar: flat `key = value` lines.

Dotted keys express the two nested tables (`env.*`, `reward.*`), `#`
starts a comment, and lists are comma separated. Example::

    # baseline attack setting
    env.speedup = 3.0
    env.cost_rate = 0.05
    env.honest_delay = 600.0
    reward.kind = exponential
    reward.mean = 10.0
    abort_probability = 0.25

Keys map one-to-one onto Scenario fields; unknown, duplicate or malformed
keys are parse errors (validation of the resulting values is a separate
stage). Serialization is canonical, so parse -> serialize -> parse is the
identity.
"""

from __future__ import annotations

from .core import (
    Bounded,
    Constant,
    EconomicEnvironment,
    Empirical,
    Exponential,
    Lognormal,
    MarkovOU,
    RewardModel,
    Scenario,
)

__all__ = [
    "ScenarioParseError",
    "parse_scenario_text",
    "parse_scenario_file",
    "serialize_scenario",
]


class ScenarioParseError(Exception):
    """Malformed scenario text: syntax, unknown/duplicate/missing keys, or
    values of the wrong shape."""


_REWARD_FIELDS = {
    "constant": ("value",),
    "exponential": ("mean",),
    "lognormal": ("mean", "variance"),
    "empirical": ("samples",),
    "bounded": ("max",),
    "markov_ou": ("initial", "long_run_mean", "reversion_rate", "volatility"),
}

_SCALAR_KEYS = {
    "env.speedup", "env.cost_rate", "env.honest_delay", "env.seed_time",
    "abort_probability", "grinding_cost_exponent",
}
_COUNT_KEYS = {"grinding_size", "coalition_size", "players", "rounds"}
_LIST_KEYS = {"protocol_means", "reward.samples"}


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ScenarioParseError(f"{key}: expected a number, got {raw!r}") \
            from None


def _parse_count(key: str, raw: str) -> int:
    value = _parse_float(key, raw)
    if not value.is_integer():
        raise ScenarioParseError(f"{key}: expected an integer, got {raw!r}")
    return int(value)


def _parse_list(key: str, raw: str) -> tuple[float, ...]:
    items = [piece.strip() for piece in raw.split(",")]
    if items == [""]:
        raise ScenarioParseError(f"{key}: expected a comma-separated list")
    return tuple(_parse_float(key, piece) for piece in items)


def parse_scenario_text(text: str) -> Scenario:
    """Parse scenario text into a Scenario (not yet validated)."""
    entries: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError(
                f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ScenarioParseError(f"line {lineno}: empty key")
        if key in entries:
            raise ScenarioParseError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    def take(key, parser, default=None):
        if key not in entries:
            if default is None:
                raise ScenarioParseError(f"missing required key {key!r}")
            return default
        return parser(key, entries.pop(key))

    env = EconomicEnvironment(
        speedup=take("env.speedup", _parse_float),
        cost_rate=take("env.cost_rate", _parse_float),
        honest_delay=take("env.honest_delay", _parse_float),
        seed_time=take("env.seed_time", _parse_float, default=0.0),
    )
    reward = _parse_reward(entries)
    scenario = Scenario(
        env=env,
        reward=reward,
        grinding_size=take("grinding_size", _parse_count, default=1),
        abort_probability=take("abort_probability", _parse_float, default=0.0),
        protocol_means=take("protocol_means", _parse_list, default=()),
        coalition_size=take("coalition_size", _parse_count, default=1),
        players=take("players", _parse_count, default=1),
        rounds=take("rounds", _parse_count, default=1),
        grinding_cost_exponent=take("grinding_cost_exponent", _parse_float,
                                    default=1.0),
    )
    if entries:
        unknown = ", ".join(sorted(entries))
        raise ScenarioParseError(f"unknown keys: {unknown}")
    return scenario


def _parse_reward(entries: dict[str, str]) -> RewardModel:
    if "reward.kind" not in entries:
        raise ScenarioParseError("missing required key 'reward.kind'")
    kind = entries.pop("reward.kind")
    if kind not in _REWARD_FIELDS:
        raise ScenarioParseError(
            f"reward.kind: unknown kind {kind!r}; "
            f"valid kinds: {', '.join(sorted(_REWARD_FIELDS))}")
    values = {}
    for name in _REWARD_FIELDS[kind]:
        key = f"reward.{name}"
        if key not in entries:
            raise ScenarioParseError(
                f"missing required key {key!r} for reward.kind = {kind}")
        raw = entries.pop(key)
        values[name] = _parse_list(key, raw) if key in _LIST_KEYS \
            else _parse_float(key, raw)
    if kind == "constant":
        return Constant(values["value"])
    if kind == "exponential":
        return Exponential(values["mean"])
    if kind == "lognormal":
        return Lognormal(values["mean"], values["variance"])
    if kind == "empirical":
        return Empirical(values["samples"])
    if kind == "bounded":
        return Bounded(values["max"])
    return MarkovOU(values["initial"], values["long_run_mean"],
                    values["reversion_rate"], values["volatility"])


def parse_scenario_file(path) -> Scenario:
    with open(path, "r") as handle:
        return parse_scenario_text(handle.read())


def _reward_lines(reward: RewardModel) -> list[str]:
    lines = [f"reward.kind = {reward.kind}"]
    if isinstance(reward, Constant):
        lines.append(f"reward.value = {reward.value!r}")
    elif isinstance(reward, Exponential):
        lines.append(f"reward.mean = {reward.mean_value!r}")
    elif isinstance(reward, Lognormal):
        lines.append(f"reward.mean = {reward.mean_value!r}")
        lines.append(f"reward.variance = {reward.variance_value!r}")
    elif isinstance(reward, Empirical):
        joined = ", ".join(repr(float(x)) for x in reward.samples)
        lines.append(f"reward.samples = {joined}")
    elif isinstance(reward, Bounded):
        lines.append(f"reward.max = {reward.max_value!r}")
    elif isinstance(reward, MarkovOU):
        lines.append(f"reward.initial = {reward.initial!r}")
        lines.append(f"reward.long_run_mean = {reward.long_run_mean!r}")
        lines.append(f"reward.reversion_rate = {reward.reversion_rate!r}")
        lines.append(f"reward.volatility = {reward.volatility!r}")
    else:
        raise ScenarioParseError(
            f"cannot serialize reward model kind {reward.kind!r}")
    return lines


def serialize_scenario(s: Scenario) -> str:
    """Canonical text form; floats use repr so round-trips are exact."""
    lines = [
        f"env.speedup = {s.env.speedup!r}",
        f"env.cost_rate = {s.env.cost_rate!r}",
        f"env.honest_delay = {s.env.honest_delay!r}",
        f"env.seed_time = {s.env.seed_time!r}",
    ]
    lines += _reward_lines(s.reward)
    lines += [
        f"grinding_size = {s.grinding_size}",
        f"abort_probability = {s.abort_probability!r}",
    ]
    if s.protocol_means:
        joined = ", ".join(repr(float(x)) for x in s.protocol_means)
        lines.append(f"protocol_means = {joined}")
    lines += [
        f"coalition_size = {s.coalition_size}",
        f"players = {s.players}",
        f"rounds = {s.rounds}",
        f"grinding_cost_exponent = {s.grinding_cost_exponent!r}",
    ]
    return "\n".join(lines) + "\n"
