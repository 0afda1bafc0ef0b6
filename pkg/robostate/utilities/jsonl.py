# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""JSON Lines files with a versioned header line: scenes and traces."""

import json

from knack.log import get_logger

from robostate.core.exceptions import ParseError, SchemaVersionError

from .const import SCHEMA_VERSION
from .path import make_parent_dirs, require_file

logger = get_logger(__name__)

KIND_SCENES = 'scenes'
KIND_TRACES = 'traces'
KIND_REPORT = 'report'
KIND_OVERLAY = 'overlay'


def dumps(obj):
    """ Canonical single-line JSON: sorted keys, no spaces. """
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


def make_header(kind, command, seed=None, **config):
    return {'schema_version': SCHEMA_VERSION, 'kind': kind, 'command': command, 'seed': seed, 'config': config}


def write_jsonl(path, header, records):
    make_parent_dirs(path)
    count = 0
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(dumps(header) + '\n')
        for record in records:
            handle.write(dumps(record) + '\n')
            count += 1
    logger.info("Wrote %d %s records to '%s'", count, header.get('kind'), path)
    return count


def read_jsonl(path, kind):
    """ Read a file written by write_jsonl.

    :returns: (header, [record, ...]).
    :raises SchemaVersionError: on a missing header or another schema version.
    """
    require_file(path)
    header = None
    records = []
    with open(path, 'r', encoding='utf-8') as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                item = json.loads(line)
            except json.JSONDecodeError as ex:
                raise ParseError('malformed JSON in {}: {}'.format(path, ex.msg), line=line_no)
            if header is None:
                header = item
                _check_header(path, header, kind)
            else:
                records.append(item)
    if header is None:
        raise SchemaVersionError('{} has no header line'.format(path))
    return header, records


def _check_header(path, header, kind):
    if not isinstance(header, dict) or 'schema_version' not in header:
        raise SchemaVersionError('{} does not start with a header line'.format(path))
    if header['schema_version'] != SCHEMA_VERSION:
        raise SchemaVersionError('{} has schema version {}; expected {}'.format(
            path, header['schema_version'], SCHEMA_VERSION))
    if header.get('kind') != kind:
        raise ParseError('{} holds {} records; expected {}'.format(path, header.get('kind'), kind), line=1)
