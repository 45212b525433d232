"""Golden-table fixtures: parsing and entry-by-entry comparison.

A fixture is a text file, one entry per line, comma-separated fields.
'#' starts a comment; the trailing comment of an entry says where in the
printed table it comes from. A field is an integer, empty (no value), a
space-separated list of integers, or a lower-case word. Header comments
of the form '# key: value' are collected as metadata (table, columns).
"""

import io
import os
import re
from collections import namedtuple

from ..errors import FixtureParseError

FixtureEntry = namedtuple('FixtureEntry', ['lineno', 'values', 'note'])
Fixture = namedtuple('Fixture', ['path', 'table', 'columns', 'entries'])
DiffEntry = namedtuple('DiffEntry', ['index', 'lineno', 'expected', 'computed'])
# suspect: entries whose printed value fails a local sanity check.
FixtureDiff = namedtuple('FixtureDiff', ['table', 'matches', 'mismatches', 'suspect'])

_WORD = re.compile(r'^[a-z_][a-z0-9_]*$')
_INT = re.compile(r'^-?\d+$')
_HEADER = re.compile(r'^#\s*(\w+)\s*:\s*(.*?)\s*$')


def _parse_field(token, path, lineno):
    token = token.strip()
    if token == '':
        return None
    if _INT.match(token):
        return int(token)
    if ' ' in token:
        parts = token.split()
        if all(_INT.match(part) for part in parts):
            return tuple(int(part) for part in parts)
    if _WORD.match(token):
        return token
    raise FixtureParseError(path, lineno, 'cannot parse field {!r}'.format(token))


def parse_fixture(path):
    if not os.path.exists(path):
        raise FixtureParseError(path, 0, 'fixture file not found')
    with io.open(path, encoding='utf-8') as handle:
        return parse_fixture_text(handle.read(), path)


def parse_fixture_text(text, path='<fixture>'):
    meta = {}
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith('#'):
            header = _HEADER.match(stripped)
            if header and not entries:
                meta[header.group(1)] = header.group(2)
            continue
        body, _, note = stripped.partition('#')
        values = tuple(_parse_field(token, path, lineno) for token in body.split(','))
        entries.append(FixtureEntry(lineno, values, note.strip()))
    columns = tuple(name.strip() for name in meta.get('columns', '').split(',') if name.strip())
    if columns:
        for entry in entries:
            if len(entry.values) != len(columns):
                raise FixtureParseError(path, entry.lineno, 'expected {} fields, got {}'.format(
                    len(columns), len(entry.values)))
    if not entries:
        raise FixtureParseError(path, 0, 'fixture has no entries')
    table = meta.get('table') or os.path.splitext(os.path.basename(path))[0]
    return Fixture(path, table, columns, entries)


def diff_fixture(fixture, computed, sanity):
    """Compare fixture entries with computed rows, index by index.

    An entry that differs is suspect when sanity(values) is False, and a
    mismatch otherwise. matches + mismatches + suspect covers every entry.
    """
    matches = 0
    mismatches = []
    suspect = []
    for index, entry in enumerate(fixture.entries):
        got = tuple(computed[index]) if index < len(computed) else None
        if got == entry.values:
            matches += 1
            continue
        item = DiffEntry(index, entry.lineno, entry.values, got)
        if sanity(entry.values):
            mismatches.append(item)
        else:
            suspect.append(item)
    return FixtureDiff(fixture.table, matches, mismatches, suspect)
