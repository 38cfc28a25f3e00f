"""The interchange document: exact scalars as strings, basis references as
[degree, index] pairs, multilinear maps as entry lists.

Strict by design: the format version field is mandatory, unknown fields are
rejected, every referenced basis element must exist and every map entry must
be homogeneous (the map constructors enforce that).  Serialization sorts
everything, so parse -> serialize -> parse is the identity and output is
byte-stable.
"""

import json

from .ainfty import AInfinity
from .fields import QQ, FieldError, PrimeField
from .graded import ChainComplex, GradedModule, MultiMap, StructureError

FORMAT = "ainfty-doc/1"


class DocumentError(ValueError):
    """Parse-level failure: malformed syntax, unknown fields, bad references."""


class Document:
    """Parsed document: a scalar field, named modules, and optional blocks
    (a structure, a retract, a transfer result)."""

    def __init__(self, field, truncation, modules, structure=None,
                 retract=None, transfer=None):
        self.field = field
        self.truncation = truncation
        self.modules = modules            # name -> GradedModule
        self.structure = structure        # (module name, AInfinity) or None
        self.retract = retract            # dict or None, see parse_retract
        self.transfer = transfer          # dict or None, see parse_transfer

    def __eq__(self, other):
        return (isinstance(other, Document)
                and self.field == other.field
                and self.truncation == other.truncation
                and self.modules == other.modules
                and self.structure == other.structure
                and self.retract == other.retract
                and self.transfer == other.transfer)


def _expect_keys(obj, required, optional, where):
    if not isinstance(obj, dict):
        raise DocumentError("%s: expected an object" % where)
    keys = set(obj)
    missing = set(required) - keys
    if missing:
        raise DocumentError("%s: missing field(s) %s" % (where, sorted(missing)))
    unknown = keys - set(required) - set(optional)
    if unknown:
        raise DocumentError("%s: unknown field(s) %s" % (where, sorted(unknown)))


def _parse_basis(ref, where):
    if (not isinstance(ref, list) or len(ref) != 2
            or not all(isinstance(x, int) for x in ref)):
        raise DocumentError("%s: basis reference must be [degree, index], got %r"
                            % (where, ref))
    return (ref[0], ref[1])


def _parse_map(entries, source, target, arity, degree, field, where):
    if not isinstance(entries, list):
        raise DocumentError("%s: map must be a list of entries" % where)
    table = {}
    for pos, entry in enumerate(entries):
        loc = "%s[%d]" % (where, pos)
        _expect_keys(entry, ["inputs", "output"], [], loc)
        inputs = entry["inputs"]
        if not isinstance(inputs, list) or len(inputs) != arity:
            raise DocumentError("%s: expected %d inputs" % (loc, arity))
        word = tuple(_parse_basis(b, loc) for b in inputs)
        if word in table:
            raise DocumentError("%s: duplicate input tuple %r" % (loc, word))
        vec = {}
        for b, scalar in entry["output"]:
            basis = _parse_basis(b, loc)
            if not isinstance(scalar, str):
                raise DocumentError("%s: scalars must be exact strings" % loc)
            try:
                value = field.parse(scalar)
            except FieldError as exc:
                raise DocumentError("%s: %s" % (loc, exc))
            if basis in vec:
                raise DocumentError("%s: duplicate output basis %r" % (loc, basis))
            vec[basis] = value
        table[word] = vec
    try:
        return MultiMap(source, target, arity, degree, table)
    except StructureError as exc:
        raise DocumentError("%s: %s" % (where, exc))


def _serialize_map(m, field):
    out = []
    for word, entries in m.sorted_entries():
        out.append({
            "inputs": [[d, i] for (d, i) in word],
            "output": [[[d, i], field.format(c)] for (d, i), c in entries],
        })
    return out


def _parse_structure(obj, modules, truncation, field, where):
    _expect_keys(obj, ["module", "differential", "products"], [], where)
    name = obj["module"]
    if name not in modules:
        raise DocumentError("%s: unknown module %r" % (where, name))
    V = modules[name]
    d = _parse_map(obj["differential"], V, V, 1, -1, field,
                   where + ".differential")
    products = {}
    if not isinstance(obj["products"], dict):
        raise DocumentError("%s: products must map arity to entries" % where)
    for key, entries in obj["products"].items():
        try:
            n = int(key)
        except ValueError:
            raise DocumentError("%s: bad product arity %r" % (where, key))
        products[n] = _parse_map(entries, V, V, n, n - 2, field,
                                 "%s.products[%s]" % (where, key))
    try:
        return name, AInfinity(V, d, products, truncation)
    except StructureError as exc:
        raise DocumentError("%s: %s" % (where, exc))


def _serialize_structure(name, a, field):
    return {
        "module": name,
        "differential": _serialize_map(a.differential, field),
        "products": {str(n): _serialize_map(a.products[n], field)
                     for n in sorted(a.products)},
    }


def _parse_retract(obj, modules, field, where):
    _expect_keys(obj, ["big", "small", "f", "g", "h", "small_d"], [], where)
    for key in ("big", "small"):
        if obj[key] not in modules:
            raise DocumentError("%s: unknown module %r" % (where, obj[key]))
    V, W = modules[obj["big"]], modules[obj["small"]]
    return {
        "big": obj["big"],
        "small": obj["small"],
        "f": _parse_map(obj["f"], V, W, 1, 0, field, where + ".f"),
        "g": _parse_map(obj["g"], W, V, 1, 0, field, where + ".g"),
        "h": _parse_map(obj["h"], V, V, 1, 1, field, where + ".h"),
        "small_d": _parse_map(obj["small_d"], W, W, 1, -1, field,
                              where + ".small_d"),
    }


def _serialize_retract(r, field):
    return {
        "big": r["big"], "small": r["small"],
        "f": _serialize_map(r["f"], field),
        "g": _serialize_map(r["g"], field),
        "h": _serialize_map(r["h"], field),
        "small_d": _serialize_map(r["small_d"], field),
    }


def _parse_component_block(obj, source, target, degree_of, field, trunc, where):
    if not isinstance(obj, dict):
        raise DocumentError("%s: expected arity -> entries" % where)
    comps = {}
    for key, entries in obj.items():
        try:
            n = int(key)
        except ValueError:
            raise DocumentError("%s: bad arity %r" % (where, key))
        if not 1 <= n <= trunc:
            raise DocumentError("%s: arity %d outside 1..%d" % (where, n, trunc))
        comps[n] = _parse_map(entries, source, target, n, degree_of(n), field,
                              "%s[%s]" % (where, key))
    return comps


def _serialize_components(comps, field):
    return {str(n): _serialize_map(m, field)
            for n, m in sorted(comps.items()) if not m.is_zero()}


def _parse_transfer(obj, modules, truncation, field, where):
    _expect_keys(obj, ["source", "phi", "psi", "homotopy"], ["comparison"], where)
    source = _parse_structure(obj["source"], modules, truncation, field,
                              where + ".source")
    # phi: V -> W, psi: W -> V, homotopy: V -> V; W is resolved by the caller
    return {"source": source, "raw": obj}


def parse(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("invalid JSON: %s" % exc)
    _expect_keys(obj, ["format", "field", "truncation", "modules"],
                 ["p", "structure", "retract", "transfer"], "document")
    if obj["format"] != FORMAT:
        raise DocumentError("unsupported format %r (expected %r)"
                            % (obj.get("format"), FORMAT))
    if obj["field"] == "rational":
        if "p" in obj:
            raise DocumentError("field 'rational' takes no p")
        field = QQ
    elif obj["field"] == "mod-p":
        if "p" not in obj:
            raise DocumentError("field 'mod-p' needs p")
        try:
            field = PrimeField(obj["p"])
        except FieldError as exc:
            raise DocumentError(str(exc))
    else:
        raise DocumentError("unknown field tag %r" % (obj["field"],))
    truncation = obj["truncation"]
    if not isinstance(truncation, int) or truncation < 1:
        raise DocumentError("truncation must be a positive integer")

    modules = {}
    if not isinstance(obj["modules"], dict) or not obj["modules"]:
        raise DocumentError("modules: expected a non-empty object")
    for name, spec in obj["modules"].items():
        _expect_keys(spec, ["dims"], [], "modules[%s]" % name)
        dims = {}
        for key, dim in spec["dims"].items():
            try:
                dims[int(key)] = dim
            except ValueError:
                raise DocumentError("modules[%s]: bad degree %r" % (name, key))
            if not isinstance(dim, int) or dim < 0:
                raise DocumentError("modules[%s]: bad dimension %r" % (name, dim))
        try:
            modules[name] = GradedModule(dims, field)
        except StructureError as exc:
            raise DocumentError("modules[%s]: %s" % (name, exc))

    structure = None
    if "structure" in obj:
        structure = _parse_structure(obj["structure"], modules, truncation,
                                     field, "structure")
    retract = None
    if "retract" in obj:
        retract = _parse_retract(obj["retract"], modules, field, "retract")
    transfer = None
    if "transfer" in obj:
        if structure is None:
            raise DocumentError("transfer block requires a structure block")
        transfer = _parse_transfer(obj["transfer"], modules, truncation, field,
                                   "transfer")
        src = transfer["source"][1]
        W = structure[1].carrier
        V = src.carrier
        raw = transfer.pop("raw")
        transfer["phi"] = _parse_component_block(
            raw["phi"], V, W, lambda n: n - 1, field, truncation, "transfer.phi")
        transfer["psi"] = _parse_component_block(
            raw["psi"], W, V, lambda n: n - 1, field, truncation, "transfer.psi")
        transfer["homotopy"] = _parse_component_block(
            raw["homotopy"], V, V, lambda n: n, field, truncation,
            "transfer.homotopy")
        transfer["comparison"] = raw.get("comparison")
    return Document(field, truncation, modules, structure, retract, transfer)


def serialize(doc):
    obj = {"format": FORMAT, "truncation": doc.truncation}
    if isinstance(doc.field, PrimeField):
        obj["field"] = "mod-p"
        obj["p"] = doc.field.p
    else:
        obj["field"] = "rational"
    obj["modules"] = {name: {"dims": {str(d): k for d, k in sorted(V.dims.items())}}
                      for name, V in sorted(doc.modules.items())}
    if doc.structure is not None:
        name, a = doc.structure
        obj["structure"] = _serialize_structure(name, a, doc.field)
    if doc.retract is not None:
        obj["retract"] = _serialize_retract(doc.retract, doc.field)
    if doc.transfer is not None:
        t = doc.transfer
        block = {
            "source": _serialize_structure(t["source"][0], t["source"][1],
                                           doc.field),
            "phi": _serialize_components(t["phi"], doc.field),
            "psi": _serialize_components(t["psi"], doc.field),
            "homotopy": _serialize_components(t["homotopy"], doc.field),
        }
        if t.get("comparison") is not None:
            block["comparison"] = t["comparison"]
        obj["transfer"] = block
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load(path):
    with open(path, "r") as fh:
        return parse(fh.read())


def dump(doc, path):
    with open(path, "w") as fh:
        fh.write(serialize(doc))
