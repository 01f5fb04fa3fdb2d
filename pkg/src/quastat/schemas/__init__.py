"""Bundled JSON schemas for configuration, model and report files."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

NAMES = ("config", "reflexion_model", "quality_model", "rule_catalog", "finding", "clone_report",
         "arch_report", "findings_report", "metrics_profile", "assessment", "artifact", "index")


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    return json.loads((resources.files(__name__) / f"{name}.schema.json").read_text())


def validate(instance: Any, name: str) -> None:
    """Raise ``jsonschema.ValidationError`` when ``instance`` does not match."""
    jsonschema.validate(instance, load(name))
