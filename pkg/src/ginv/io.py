"""Text serialization for matrices.

Format::

    field rational          (or "field gaussian", "field gf <p>")
    <rows> <cols>
    scalar tokens in row-major order, whitespace separated

Writing then parsing is bit-exact for every field.
"""

from .errors import ParseError
from .fields import Field, field_by_name
from .matrices import Matrix


def format_matrix(a: Matrix) -> str:
    f = a.field
    header = f"field gf {f.p}" if f.id.startswith("gf") else f"field {f.id}"
    body = "\n".join(
        " ".join(f.render(a.get(i, j)) for j in range(a.cols))
        for i in range(a.rows)
    )
    if body:
        return f"{header}\n{a.rows} {a.cols}\n{body}\n"
    return f"{header}\n{a.rows} {a.cols}\n"


def parse_matrix(text: str) -> Matrix:
    lines = text.splitlines()
    # locate the header and shape lines, tolerating blank lines
    idx = [i for i, ln in enumerate(lines) if ln.strip()]
    if len(idx) < 2:
        raise ParseError("expected a field line and a shape line", line=1)
    field = _parse_field_line(lines[idx[0]], idx[0] + 1)
    shape_no = idx[1] + 1
    parts = lines[idx[1]].split()
    if len(parts) != 2:
        raise ParseError(f"malformed shape line {lines[idx[1]]!r}", line=shape_no)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"malformed shape line {lines[idx[1]]!r}", line=shape_no)
    if rows < 0 or cols < 0:
        raise ParseError("matrix dimensions must be nonnegative", line=shape_no)
    data = []
    last_line = shape_no
    for i in idx[2:]:
        last_line = i + 1
        for token in lines[i].split():
            if len(data) >= rows * cols:
                raise ParseError("too many scalar entries", line=last_line)
            try:
                data.append(field.parse(token))
            except Exception as exc:
                raise ParseError(str(exc), line=last_line)
    if len(data) != rows * cols:
        raise ParseError(
            f"expected {rows * cols} entries, found {len(data)}", line=last_line)
    return Matrix(field, rows, cols, data)


def _parse_field_line(line: str, line_no: int) -> Field:
    parts = line.split()
    if not parts or parts[0] != "field":
        raise ParseError(f"expected 'field ...', found {line!r}", line=line_no)
    try:
        if len(parts) == 2:
            return field_by_name(parts[1])
        if len(parts) == 3 and parts[1] == "gf":
            return field_by_name("gf", int(parts[2]))
    except ValueError:
        pass
    except Exception as exc:
        raise ParseError(str(exc), line=line_no)
    raise ParseError(f"unrecognized field line {line!r}", line=line_no)
