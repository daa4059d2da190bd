"""Reading and writing measure, function and result files.

Complex numbers are always serialized as ``{"re": ..., "im": ...}``.
Every writer goes through a temporary file and ``os.replace`` so a
partially written artifact never appears under the final name.
"""

import csv
import io
import json
import os
import re
import sys
import tempfile

import numpy as np

from .exceptions import ValidationError
from .measures import (AtomicMeasure, FunctionOnSupport, SelfSimilarMeasure, exp_vector,
                       measure_to_dict)
from .series import Expansion


def encode_complex(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def decode_complex(obj, field="value"):
    if isinstance(obj, bool):
        raise ValidationError("expected a number or {re, im}", field=field)
    if isinstance(obj, (int, float)):
        return complex(obj)
    if not isinstance(obj, dict) or set(obj) - {"re", "im"} or "re" not in obj:
        raise ValidationError("expected {\"re\": ..., \"im\": ...}", field=field)
    re_, im_ = obj["re"], obj.get("im", 0.0)
    for k, v in (("re", re_), ("im", im_)):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError("complex parts must be numbers", field=f"{field}.{k}")
    return complex(re_, im_)


def load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from exc


def _require_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ValidationError("expected a JSON object", field=where or None)
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ValidationError(f"unknown key '{extra[0]}'", field=f"{where}{extra[0]}")
    for k in required:
        if k not in obj:
            raise ValidationError(f"missing key '{k}'", field=f"{where}{k}")


def measure_from_dict(d):
    _require_keys(d, {"type", "atoms", "R", "digits", "probs"}, ["type"], "")
    kind = d["type"]
    if kind == "atomic":
        _require_keys(d, {"type", "atoms"}, ["atoms"], "")
        atoms = d["atoms"]
        if not isinstance(atoms, list):
            raise ValidationError("atoms must be a list", field="atoms")
        xs, ws = [], []
        for i, a in enumerate(atoms):
            _require_keys(a, {"x", "w"}, ["x", "w"], f"atoms[{i}].")
            for k in ("x", "w"):
                if isinstance(a[k], bool) or not isinstance(a[k], (int, float)):
                    raise ValidationError("must be a number", field=f"atoms[{i}].{k}")
            xs.append(a["x"])
            ws.append(a["w"])
        return AtomicMeasure(xs, ws)
    if kind == "ifs":
        _require_keys(d, {"type", "R", "digits", "probs"}, ["R", "digits", "probs"], "")
        if not isinstance(d["digits"], list) or not isinstance(d["probs"], list):
            raise ValidationError("digits and probs must be lists", field="digits")
        return SelfSimilarMeasure(d["R"], d["digits"], d["probs"])
    raise ValidationError(f"unknown measure type {kind!r} (expected 'atomic' or 'ifs')",
                          field="type")


def read_measure(path):
    return measure_from_dict(load_json(path))


def write_measure(m, path):
    write_json(measure_to_dict(m), path)


_GEN_EXP = re.compile(r"^exp_(-?\d+)$")
_GEN_RANDOM = re.compile(r"^random\((\d+)\)$")


def generate_function(m, name):
    """Named test functions: ``indicator_left``, ``exp_k``, ``random(seed)``."""
    if name == "indicator_left":
        return FunctionOnSupport(m, (m.points < 0.5).astype(complex))
    hit = _GEN_EXP.match(name)
    if hit:
        return exp_vector(m, int(hit.group(1)))
    hit = _GEN_RANDOM.match(name)
    if hit:
        rng = np.random.default_rng(int(hit.group(1)))
        v = rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size)
        return FunctionOnSupport(m, v / np.sqrt(2.0))
    raise ValidationError(f"unknown generator {name!r}", field="generator")


def function_from_json(obj, m):
    """A JSON list of complex values, a generator name, or ``{"generator": name}``."""
    if isinstance(obj, str):
        return generate_function(m, obj)
    if isinstance(obj, dict):
        _require_keys(obj, {"generator"}, ["generator"], "")
        if not isinstance(obj["generator"], str):
            raise ValidationError("generator must be a string", field="generator")
        return generate_function(m, obj["generator"])
    if not isinstance(obj, list):
        raise ValidationError("function file must hold a list of values or a generator")
    if len(obj) != m.size:
        raise ValidationError(f"{len(obj)} values for a measure with {m.size} atoms",
                              field="values")
    return FunctionOnSupport(m, [decode_complex(v, f"values[{i}]") for i, v in enumerate(obj)])


def parse_function_file(path, m):
    return function_from_json(load_json(path), m)


def function_to_json(f):
    return [encode_complex(v) for v in f.values]


def expansion_to_dict(e):
    return {"measure": e.measure_id, "N": int(e.N),
            "coefficients": [encode_complex(c) for c in e.coefficients],
            "parseval_partial": float(e.parseval_partial), "residual": float(e.residual)}


def expansion_from_dict(d):
    _require_keys(d, {"measure", "N", "coefficients", "parseval_partial", "residual"},
                  ["measure", "N", "coefficients", "parseval_partial", "residual"], "")
    c = np.array([decode_complex(v, f"coefficients[{i}]")
                  for i, v in enumerate(d["coefficients"])], dtype=complex)
    if c.size != d["N"] + 1:
        raise ValidationError(f"N={d['N']} but {c.size} coefficients", field="N")
    return Expansion(d["measure"], c, float(d["parseval_partial"]), float(d["residual"]))


def _atomic_write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(obj, path):
    _atomic_write(json.dumps(obj, indent=1) + "\n", path)


def write_csv(header, rows, path):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        # + 0.0 folds negative zero
        writer.writerow([repr(float(v) + 0.0) if isinstance(v, float) else v for v in row])
    _atomic_write(buf.getvalue(), path)


def complex_rows(values, start=0):
    """``(n, re, im)`` rows."""
    return [(start + n, float(v.real) + 0.0, float(v.imag) + 0.0) for n, v in enumerate(values)]
