"""Events, second-order events and universe registries.

An event is a named set tied to a world label and a subject label.  A
registry of events is a strong virtual reality when every event is a
wellfounded set, and a weak one as soon as a single event is not: that
event lies outside every wellfounded universe.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .errors import DuplicateName, EmptyRegistry
from .hyperset import HyperSet, decorate, format_set, is_wellfounded, singleton
from .system import System, from_dict


class EventKind(enum.Enum):
    WELLFOUNDED = "Wellfounded"
    NON_WELLFOUNDED = "NonWellfounded"

    def __str__(self):
        return self.value


class VRKind(enum.Enum):
    STRONG = "StrongVR"
    WEAK = "WeakVR"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Event:
    name: str
    world_ref: str
    subject: str
    value: HyperSet
    picture: System | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SecondOrderEvent:
    """The registration of an event: the singleton of its value."""

    of: Event
    value: HyperSet


@dataclass
class UniverseRegistry:
    subject: str
    events: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.events.values())

    def __len__(self):
        return len(self.events)

    def values(self):
        return [e.value for e in self.events.values()]


def register_event(reg, name, world_ref, picture):
    """Add an event whose value is the set `picture` depicts."""
    if name in reg.events:
        raise DuplicateName(name)
    event = Event(name, world_ref, reg.subject, decorate(picture), picture)
    reg.events[name] = event
    return event


def second_order(e):
    return SecondOrderEvent(e, singleton(e.value))


def classify_event(e):
    return EventKind.WELLFOUNDED if is_wellfounded(e.value) else EventKind.NON_WELLFOUNDED


def classify_universe(reg):
    if not reg.events:
        raise EmptyRegistry()
    if all(classify_event(e) is EventKind.WELLFOUNDED for e in reg):
        return VRKind.STRONG
    return VRKind.WEAK


def embed_check(strong, weak):
    """Does every event value of `strong` occur among the event values of `weak`?"""
    available = set(weak.values())
    return all(v in available for v in strong.values())


def wellfounded_part(reg):
    """The registry restricted to its wellfounded events."""
    part = UniverseRegistry(reg.subject)
    part.events = {n: e for n, e in reg.events.items() if classify_event(e) is EventKind.WELLFOUNDED}
    return part


# -- serialization ---------------------------------------------------------------


def registry_from_dict(data):
    reg = UniverseRegistry(str(data.get("subject", "S")))
    for item in data.get("events", []):
        register_event(reg, item["name"], item.get("world_ref", ""), from_dict(item["system"]))
    return reg


def registry_to_dict(reg):
    events = []
    for e in reg:
        pic = e.picture if e.picture is not None else e.value.picture
        events.append({"name": e.name, "world_ref": e.world_ref, "system": pic.to_dict()})
    return {"subject": reg.subject, "events": events}


def load_registry(path):
    with open(path, encoding="utf-8") as fh:
        return registry_from_dict(json.load(fh))


def report(reg):
    """Machine-readable classification: per-event tags plus the verdict."""
    return {
        "subject": reg.subject,
        "events": [
            {
                "name": e.name,
                "world_ref": e.world_ref,
                "kind": str(classify_event(e)),
                "value": format_set(e.value),
            }
            for e in reg
        ],
        "verdict": str(classify_universe(reg)),
    }


def report_text(reg):
    rep = report(reg)
    width = max(len(e["name"]) for e in rep["events"])
    lines = [f"subject: {rep['subject']}"]
    for e in rep["events"]:
        lines.append(f"  {e['name']:<{width}}  {e['kind']:<14}  {e['value']}")
    lines.append(rep["verdict"])
    return "\n".join(lines) + "\n"
