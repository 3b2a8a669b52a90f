# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import os
import json
import tempfile

def trymakedirs(fn, dir=False):
    if dir is True:
        dirnm = os.path.dirname(fn)
    else:
        dirnm = fn
    if dirnm and not os.path.exists(dirnm):
        try:
            os.makedirs(dirnm)
        except OSError:
            pass

def json_dumps(obj):
    '''
    Serializes *obj* with sorted keys and fixed separators, so that
    identical inputs produce byte-identical output.
    '''
    return json.dumps(obj, sort_keys=True, separators=(',', ': '))

def read_file(fn):
    with open(fn, encoding='utf-8') as f:
        return f.read()

def write_file(data, fn):
    '''
    Writes *data* (str or bytes) to *fn* atomically: the data goes to a
    temporary file in the same directory, which is then renamed.
    '''
    if isinstance(data, str):
        data = data.encode('utf-8')
    trymakedirs(fn, dir=True)
    dirnm = os.path.dirname(os.path.abspath(fn))
    fd,tmpfn = tempfile.mkstemp(dir=dirnm, prefix='.tmp-')
    try:
        with os.fdopen(fd, 'wb') as f:
            f.write(data)
        os.rename(tmpfn, fn)
    except:
        if os.path.exists(tmpfn):
            os.unlink(tmpfn)
        raise

def write_jsonl(records, fn):
    write_file(''.join(json_dumps(r) + '\n' for r in records), fn)

def read_jsonl(fn):
    records = []
    with open(fn, encoding='utf-8') as f:
        for i,line in enumerate(f):
            line = line.strip()
            if not len(line):
                continue
            try:
                records.append(json.loads(line))
            except ValueError as e:
                raise ValueError('%s line %i: %s' % (fn, i+1, e))
    return records
