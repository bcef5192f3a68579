"""Bug-report model: parsing from JSON, stack-trace and program-entity
detection, and three-way report classification.

A report falls into exactly one class:

* BR_ST -- contains at least one stack-trace frame line,
* BR_PE -- no trace, but program entities (qualified invocations, ``*.java``
  file names, dotted package paths),
* BR_NL -- plain natural-language text only.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import ReportParseError, ReportValidationError


class ReportClass(Enum):
    BR_ST = "BR_ST"
    BR_PE = "BR_PE"
    BR_NL = "BR_NL"


class LocationKind(Enum):
    FILE_LINE = "file_line"
    UNKNOWN_SOURCE = "unknown_source"
    NATIVE_METHOD = "native_method"


@dataclass(frozen=True)
class FrameLocation:
    kind: LocationKind
    file: str | None = None
    line: int | None = None


@dataclass(frozen=True)
class StackFrame:
    position: int  # 1-based, consecutive within a trace block
    package: str   # dotted path, may be empty
    class_name: str
    method_name: str
    location: FrameLocation


@dataclass(frozen=True)
class BugReport:
    id: str
    title: str
    description: str = ""


@dataclass(frozen=True)
class ClassifiedReport:
    report: BugReport
    label: ReportClass
    frames: tuple[StackFrame, ...] = ()
    exception_names: tuple[str, ...] = ()
    error_message_lines: tuple[str, ...] = ()
    program_entities: tuple[str, ...] = ()


# Trace-frame line filter; the grouped alternation at the end is the anchor
# for the location part.
_TRACE_LINE = re.compile(
    r"(.*)?(.+)\.(.+)(\((.+)\.java:\d+\)|\(Unknown Source\)|\(Native Method\))"
)
_FILE_LINE = re.compile(r"\((.+)\.java:(\d+)\)")
_IDENTIFIER = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")

_EXCEPTION_NAME = re.compile(r"\b[A-Za-z_$][A-Za-z0-9_$]*(?:Exception|Error)\b")

# Program entities: qualified invocation, source file name, dotted package
# path of at least three segments.
_INVOCATION = re.compile(r"\b[A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)+\s*\([^()\n]*\)")
_JAVA_FILE = re.compile(r"\b[A-Z][\w$]*\.java\b")
_PACKAGE_PATH = re.compile(r"\b[a-z_][\w$]*(?:\.[a-z_][\w$]*){2,}\b")


def parse_report(source: str | Path | bytes) -> BugReport:
    """Parse a single report from a JSON file path or raw JSON bytes.

    The file is a UTF-8 JSON object with string fields ``id``, ``title``, and
    an optional ``description`` (defaults to empty). Extra keys are ignored.
    """
    if isinstance(source, bytes):
        name, payload = "<bytes>", source
    else:
        name = str(source)
        try:
            payload = Path(source).read_bytes()
        except OSError as exc:
            raise ReportParseError(f"{name}: cannot read report file: {exc}") from exc
    try:
        data = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ReportParseError(f"{name}: not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ReportParseError(f"{name}: expected a JSON object at top level")
    return report_from_dict(data, name)


def report_from_dict(data: dict, name: str = "<dict>") -> BugReport:
    raw_id = data.get("id")
    if isinstance(raw_id, int):
        raw_id = str(raw_id)
    if not isinstance(raw_id, str) or not raw_id.strip():
        raise ReportValidationError(f"{name}: field 'id' is missing or empty")
    title = data.get("title")
    if not isinstance(title, str) or not title.strip():
        raise ReportValidationError(f"{name}: field 'title' is missing or empty")
    description = data.get("description", "")
    if description is None:
        description = ""
    if not isinstance(description, str):
        raise ReportParseError(f"{name}: field 'description' must be a string")
    return BugReport(id=raw_id.strip(), title=title, description=description)


def load_reports(path: str | Path) -> list[BugReport]:
    """Load a report collection: a directory of ``*.json`` files or one JSON
    array file. Ids must be unique within the collection."""
    path = Path(path)
    reports: list[BugReport] = []
    if path.is_dir():
        for file in sorted(path.glob("*.json")):
            reports.append(parse_report(file))
    else:
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ReportParseError(f"{path}: cannot read report collection: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ReportParseError(f"{path}: not valid JSON: {exc}") from exc
        if not isinstance(data, list):
            raise ReportParseError(f"{path}: expected a JSON array of reports")
        for i, item in enumerate(data):
            if not isinstance(item, dict):
                raise ReportParseError(f"{path}: entry {i} is not an object")
            reports.append(report_from_dict(item, f"{path}[{i}]"))
    seen: set[str] = set()
    for report in reports:
        if report.id in seen:
            raise ReportValidationError(f"duplicate report id: {report.id}")
        seen.add(report.id)
    return reports


def _parse_location(location_text: str) -> FrameLocation:
    if location_text == "(Unknown Source)":
        return FrameLocation(LocationKind.UNKNOWN_SOURCE)
    if location_text == "(Native Method)":
        return FrameLocation(LocationKind.NATIVE_METHOD)
    m = _FILE_LINE.search(location_text)
    return FrameLocation(LocationKind.FILE_LINE, m.group(1) + ".java", int(m.group(2)))


def match_trace_lines(text: str) -> list[StackFrame]:
    """Extract one stack frame per line matching the trace-line pattern.

    The class name is the last dot-segment before the method name; the
    package is everything before it. Positions run 1..N in textual order.
    """
    frames: list[StackFrame] = []
    for line in text.splitlines():
        m = _TRACE_LINE.search(line)
        if m is None:
            continue
        head = line[: m.start(4)].rstrip().rstrip(".")
        qualified = head.split()[-1] if head.split() else ""
        segments = qualified.split(".")
        if len(segments) < 2:
            continue
        method, class_name = segments[-1], segments[-2]
        if not (_IDENTIFIER.match(method) and _IDENTIFIER.match(class_name)):
            continue
        frames.append(
            StackFrame(
                position=len(frames) + 1,
                package=".".join(segments[:-2]),
                class_name=class_name,
                method_name=method,
                location=_parse_location(m.group(4)),
            )
        )
    return frames


def detect_program_entities(text: str) -> list[str]:
    """Distinct program-entity strings in order of first occurrence."""
    hits: list[tuple[int, str]] = []
    for pattern in (_INVOCATION, _JAVA_FILE, _PACKAGE_PATH):
        for m in pattern.finditer(text):
            hits.append((m.start(), m.group(0)))
    hits.sort()
    entities: list[str] = []
    for _, entity in hits:
        if entity not in entities:
            entities.append(entity)
    return entities


def extract_exception_names(text: str) -> list[str]:
    names: list[str] = []
    for m in _EXCEPTION_NAME.finditer(text):
        if m.group(0) not in names:
            names.append(m.group(0))
    return names


def _error_message_lines(text: str) -> list[str]:
    lines: list[str] = []
    for line in text.splitlines():
        if _TRACE_LINE.search(line):
            continue
        if _EXCEPTION_NAME.search(line):
            lines.append(line.strip())
    return lines


def classify(report: BugReport, force: ReportClass | None = None) -> ClassifiedReport:
    """Assign the report class and pull out its structured elements.

    Trace frames take precedence over program entities. ``force`` overrides
    the detected class (batch replacement for manual re-classification); the
    structured fields are then shaped to fit the forced class.
    """
    text = report.title + "\n" + report.description
    frames = tuple(match_trace_lines(text))

    label = force
    if label is None:
        if frames:
            label = ReportClass.BR_ST
        elif detect_program_entities(text):
            label = ReportClass.BR_PE
        else:
            label = ReportClass.BR_NL

    if label is ReportClass.BR_ST:
        return ClassifiedReport(
            report=report,
            label=label,
            frames=frames,
            exception_names=tuple(extract_exception_names(text)),
            error_message_lines=tuple(_error_message_lines(text)),
        )
    if label is ReportClass.BR_PE:
        return ClassifiedReport(
            report=report,
            label=label,
            program_entities=tuple(detect_program_entities(text)),
        )
    return ClassifiedReport(report=report, label=label)
