"""Voice-command understanding: grammar parse, confidence fusion,
clarification policy, learned task parameters, and an optional remote
understander with a deterministic grammar fallback."""

from __future__ import annotations

import json
import logging
import os
import re
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from enum import Enum
from random import Random

from .sensors import MicSample

log = logging.getLogger(__name__)

ACCEPT_THRESHOLD = 0.7
REPEAT_THRESHOLD = 0.4
MAX_ATTEMPTS = 2  # attempts >= this with mid confidence accept the best parse

UNDERSTANDER_URL_ENV = "ASSISTBOT_UNDERSTANDER_URL"
UNDERSTANDER_KEY_ENV = "ASSISTBOT_UNDERSTANDER_KEY"


class IntentKind(Enum):
    FETCH = "Fetch"
    PATROL = "Patrol"
    GOTO = "GoTo"
    STOP = "Stop"
    HELP = "Help"
    UNKNOWN = "Unknown"


class ClarificationAction(Enum):
    ACCEPT = "Accept"
    ASK_REPEAT = "AskRepeat"
    APPROACH_SPEAKER = "ApproachSpeaker"


@dataclass
class Intent:
    kind: IntentKind = IntentKind.UNKNOWN
    item: str | None = None
    parameters: dict[str, str] = field(default_factory=dict)
    confidence: float = 1.0
    fallback: bool = False


ITEMS = ("tea", "water", "medicine", "mug", "coffee")

_FETCH_VERBS = r"(?:bring|fetch|get|give|deliver|carry)"
_ITEM_RE = "|".join(ITEMS)

_PATTERNS: list[tuple[IntentKind, re.Pattern]] = [
    (IntentKind.STOP, re.compile(r"\b(?:stop|halt|freeze|stand still)\b")),
    (IntentKind.HELP, re.compile(r"\bhelp\b")),
    (IntentKind.PATROL, re.compile(r"\b(?:patrol|keep watch|watch)\b")),
    (IntentKind.GOTO, re.compile(r"\bgo(?: back)? to (?:the )?(\w+)\b")),
    (IntentKind.FETCH,
     re.compile(rf"\b{_FETCH_VERBS}\b.*\b({_ITEM_RE})\b")),
]

_PARAM_RE = re.compile(r"\bwith (\w+) (\w+)\b")  # e.g. "with 2 sugars"


def parse(transcript: str) -> Intent:
    """Deterministic grammar parse; anything out of grammar is Unknown."""
    text = re.sub(r"[^\w\s]", " ", transcript.lower())
    text = re.sub(r"\s+", " ", text).strip()
    for kind, pattern in _PATTERNS:
        m = pattern.search(text)
        if not m:
            continue
        item = None
        params: dict[str, str] = {}
        if kind is IntentKind.FETCH:
            item = m.group(1)
        elif kind is IntentKind.GOTO:
            params["target"] = m.group(1)
        for pm in _PARAM_RE.finditer(text):
            value, key = pm.group(1), pm.group(2)
            params[key.rstrip("s")] = value
        return Intent(kind=kind, item=item, parameters=params)
    return Intent(kind=IntentKind.UNKNOWN)


def fuse_confidence(sample: MicSample) -> float:
    """Fused intelligibility: the better of the two microphones."""
    return max(sample.omni_score, sample.dir_score)


def clarification_policy(confidence: float, attempt: int) -> ClarificationAction:
    if confidence >= ACCEPT_THRESHOLD:
        return ClarificationAction.ACCEPT
    if attempt >= MAX_ATTEMPTS and confidence >= REPEAT_THRESHOLD:
        return ClarificationAction.ACCEPT
    if confidence >= REPEAT_THRESHOLD:
        return ClarificationAction.ASK_REPEAT
    return ClarificationAction.APPROACH_SPEAKER


@dataclass
class RecognitionResult:
    transcript: str
    confidence: float
    understood: bool


def recognize(sample: MicSample, rng: Random) -> RecognitionResult:
    """Simulated speech recognition over a captured utterance.

    Each microphone channel independently succeeds with probability equal
    to its intelligibility score; the utterance is understood if either
    channel succeeds, otherwise the transcript is lost. Both draws always
    happen so traces stay reproducible.
    """
    omni_ok = rng.random() < sample.omni_score
    dir_ok = rng.random() < sample.dir_score
    understood = omni_ok or dir_ok
    return RecognitionResult(
        transcript=sample.transcript if understood else "",
        confidence=fuse_confidence(sample),
        understood=understood,
    )


@dataclass
class ParameterMemory:
    """Learned per-task parameters, persisted across tasks in a session."""

    required: dict[tuple[str, str], set[str]] = field(default_factory=dict)
    values_last_used: dict[str, str] = field(default_factory=dict)

    def learn(self, kind: IntentKind, item: str | None, key: str) -> None:
        if not key:
            raise ValueError("parameter key must be non-empty")
        self.required.setdefault((kind.value, item or ""), set()).add(key)

    def required_for(self, kind: IntentKind, item: str | None) -> set[str]:
        return set(self.required.get((kind.value, item or ""), set()))

    def remember_value(self, key: str, value: str) -> None:
        self.values_last_used[key] = value

    def save(self, path: str) -> None:
        doc = {
            "required": [
                {"kind": k, "item": i, "keys": sorted(keys)}
                for (k, i), keys in sorted(self.required.items())
            ],
            "values_last_used": self.values_last_used,
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=2)

    @classmethod
    def load(cls, path: str) -> "ParameterMemory":
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
        mem = cls()
        for entry in doc.get("required", []):
            mem.required[(entry["kind"], entry["item"])] = set(entry["keys"])
        mem.values_last_used = dict(doc.get("values_last_used", {}))
        return mem


def learn_parameter(memory: ParameterMemory, kind: IntentKind,
                    item: str | None, key: str) -> ParameterMemory:
    memory.learn(kind, item, key)
    return memory


def missing_parameters(intent: Intent, memory: ParameterMemory) -> set[str]:
    if intent.kind is IntentKind.UNKNOWN:
        raise ValueError("missing_parameters needs a parsed intent")
    return memory.required_for(intent.kind, intent.item) - set(intent.parameters)


def external_understand(transcript: str, timeout: float = 2.0,
                        endpoint: str | None = None,
                        api_key: str | None = None) -> Intent:
    """Ask the configured remote understander, falling back to the grammar.

    With no endpoint configured this is exactly ``parse``. Any network
    failure, timeout or malformed response also degrades to the grammar
    parse with ``fallback`` set.
    """
    endpoint = endpoint if endpoint is not None else os.environ.get(UNDERSTANDER_URL_ENV)
    api_key = api_key if api_key is not None else os.environ.get(UNDERSTANDER_KEY_ENV)
    if not endpoint:
        return parse(transcript)
    body = json.dumps({"transcript": transcript}).encode("utf-8")
    req = urllib.request.Request(
        endpoint, data=body, method="POST",
        headers={"Content-Type": "application/json"})
    if api_key:
        req.add_header("Authorization", f"Bearer {api_key}")
    try:
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            doc = json.loads(resp.read().decode("utf-8"))
        kind = IntentKind(doc["kind"])
        item = doc.get("item")
        params = {str(k): str(v) for k, v in (doc.get("parameters") or {}).items()}
        return Intent(kind=kind, item=item, parameters=params,
                      confidence=float(doc.get("confidence", 1.0)))
    except (urllib.error.URLError, TimeoutError, OSError,
            ValueError, KeyError) as exc:
        log.warning("understander call failed (%s); using grammar parse", exc)
        intent = parse(transcript)
        intent.fallback = True
        return intent
