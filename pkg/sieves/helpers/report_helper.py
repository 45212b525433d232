"""Write reports as CSV or JSON, and read CSV reports back."""

import csv
import io
import json

SCHEMA = 'sieve-report/1'


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def _parse_cell(text):
    if text == '':
        return None
    if text in ('true', 'false'):
        return text == 'true'
    try:
        return int(text)
    except ValueError:
        return text


def _plain(value):
    """Namedtuples become dicts, tuples become lists, numpy scalars ints."""
    if hasattr(value, '_asdict'):
        return {key: _plain(item) for key, item in value._asdict().items()}
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


class ReportHelper(object):
    """Emit rows of one namedtuple type as CSV, or as a versioned JSON document.

    CSV has a header row, commas, no locale formatting; None is an empty
    cell and booleans are true/false. JSON wraps the same rows as records
    under a top-level "schema" field, plus any extra summary fields.
    """
    def __init__(self, fmt='csv', stream=None):
        if fmt not in ('csv', 'json'):
            raise ValueError('unknown report format {!r}'.format(fmt))
        self.fmt = fmt
        self.stream = stream

    def emit(self, kind, fields, rows, **extra):
        if self.fmt == 'csv':
            self.stream.write(emit_csv(fields, rows))
        else:
            document = {'schema': SCHEMA, 'kind': kind}
            document.update(_plain(extra))
            document['records'] = [dict(zip(fields, _plain(list(row)))) for row in rows]
            json.dump(document, self.stream, indent=2)
            self.stream.write('\n')


def emit_csv(fields, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buf.getvalue()


def parse_csv(text, record_type):
    """Read text written by emit_csv back into record_type instances."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != tuple(record_type._fields):
        raise ValueError('CSV header {} does not match {}'.format(header, record_type._fields))
    return [record_type(*[_parse_cell(cell) for cell in row]) for row in reader if row]
