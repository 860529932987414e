"""Pretty printer that turns an AST back into parseable Java-like source.

The printer is the inverse contract of the parser: printing a tree and
re-parsing the output yields a structurally identical tree, and printing is
a fixed point after one normalization pass. Expressions are parenthesized
conservatively so operator precedence never has to be reconstructed.
"""

from __future__ import annotations

from .nodes import AstNode, NodeKind

_INDENT = "    "

_EXPR_STMT_KINDS = frozenset(
    {
        NodeKind.ASSIGNMENT,
        NodeKind.METHOD_INVOCATION,
        NodeKind.OBJECT_CREATION,
        NodeKind.PREFIX,
        NodeKind.POSTFIX,
    }
)


def print_unit(root: AstNode) -> str:
    """Render a compilation-unit AST as source text."""
    lines: list[str] = []
    for child in root.children:
        if child.kind is NodeKind.CLASS_DECLARATION:
            lines.extend(_class_lines(child, 0))
        elif child.kind is NodeKind.STATEMENT_OTHER:
            lines.append(child.meta.get("raw", child.value or ""))
        else:
            lines.extend(_stmt_lines(child, 0))
    return "\n".join(lines) + "\n"


def print_statement(node: AstNode) -> str:
    """Render a single statement (used by tests and transforms)."""
    return "\n".join(_stmt_lines(node, 0))


def print_expression(node: AstNode) -> str:
    return _expr(node)


# ---- declarations ---------------------------------------------------------


def _class_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    lines = [pad + a for a in node.meta.get("annotations", [])]
    head = ""
    mods = node.meta.get("mods", [])
    if mods:
        head += " ".join(mods) + " "
    head += node.meta.get("kw", "class") + " " + (node.value or "")
    if node.meta.get("typeparams"):
        head += node.meta["typeparams"]
    if node.meta.get("heritage"):
        head += " " + node.meta["heritage"]
    lines.append(pad + head + " {")
    for member in node.children:
        if member.kind is NodeKind.SIMPLE_NAME:
            continue  # the class name child
        lines.extend(_member_lines(member, depth + 1))
    lines.append(pad + "}")
    return lines


def _member_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    if node.kind is NodeKind.CLASS_DECLARATION:
        return _class_lines(node, depth)
    if node.kind is NodeKind.METHOD_DECLARATION:
        return _method_lines(node, depth)
    if node.kind is NodeKind.VARIABLE_DECLARATION:
        return [pad + _variable_decl_text(node) + ";"]
    if node.kind is NodeKind.BLOCK:
        mods = node.meta.get("mods", [])
        prefix = (" ".join(mods) + " ") if mods else ""
        body = _stmt_lines(node, depth)
        body[0] = pad + prefix + body[0].lstrip()
        return body
    if node.kind is NodeKind.STATEMENT_OTHER:
        raw = node.meta.get("raw", "")
        if node.value == "enum_constants":
            return [pad + raw + ";"]
        return [pad + raw]
    return _stmt_lines(node, depth)


def _method_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    lines = [pad + a for a in node.meta.get("annotations", [])]
    parts = []
    mods = node.meta.get("mods", [])
    if mods:
        parts.append(" ".join(mods))
    if node.meta.get("typeparams"):
        parts.append(node.meta["typeparams"])
    idx = 0
    if node.meta.get("has_rtype"):
        parts.append(_type_text(node.children[0]))
        idx = 1
    name = node.children[idx].value or ""
    idx += 1
    n_params = node.meta.get("n_params", 0)
    params = node.children[idx : idx + n_params]
    idx += n_params
    sig = name + "(" + ", ".join(_param_text(p) for p in params) + ")"
    sig += "[]" * node.meta.get("extra_dims", 0)
    if node.meta.get("throws"):
        sig += " " + node.meta["throws"]
    head = pad + (" ".join(parts) + " " if parts else "") + sig
    if node.meta.get("has_body"):
        body = node.children[idx]
        block = _stmt_lines(body, depth)
        lines.append(head + " {")
        lines.extend(block[1:-1])
        lines.append(pad + "}")
    else:
        lines.append(head + ";")
    return lines


def _param_text(node: AstNode) -> str:
    mods = node.meta.get("mods", [])
    text = (" ".join(mods) + " ") if mods else ""
    text += _type_text(node.children[0])
    if node.meta.get("vararg"):
        text += "..."
    text += " " + (node.value or "")
    text += "[]" * node.meta.get("dims", 0)
    return text


def _variable_decl_text(node: AstNode) -> str:
    mods = node.meta.get("mods", [])
    text = (" ".join(mods) + " ") if mods else ""
    text += _type_text(node.children[0]) + " " + (node.value or "")
    text += "[]" * node.meta.get("dims", 0)
    if len(node.children) > 2:
        text += " = " + _expr(node.children[2])
    return text


def _type_text(node: AstNode) -> str:
    return node.meta.get("text", node.value or "")


# ---- statements -------------------------------------------------------------


def _stmt_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    kind = node.kind
    if kind is NodeKind.BLOCK:
        lines = [pad + "{"]
        for child in node.children:
            lines.extend(_stmt_lines(child, depth + 1))
        lines.append(pad + "}")
        return lines
    if kind is NodeKind.EMPTY_STATEMENT:
        return [pad + ";"]
    if kind is NodeKind.VARIABLE_DECLARATION:
        return [pad + _variable_decl_text(node) + ";"]
    if kind is NodeKind.EXPRESSION_STATEMENT:
        return [pad + _expr(node.children[0]) + ";"]
    if kind is NodeKind.IF:
        return _if_lines(node, depth)
    if kind is NodeKind.WHILE_LOOP:
        head = pad + "while (" + _expr(node.children[0]) + ")"
        return _attach_body(head, node.children[1], depth)
    if kind is NodeKind.DO_LOOP:
        body, cond = node.children
        lines = _attach_body(pad + "do", body, depth)
        lines[-1] += " while (" + _expr(cond) + ");"
        return lines
    if kind is NodeKind.FOR_LOOP:
        return _for_lines(node, depth)
    if kind is NodeKind.ENHANCED_FOR_LOOP:
        var, iterable, body = node.children
        head = (
            pad + "for (" + _variable_decl_text(var) + " : " + _expr(iterable) + ")"
        )
        return _attach_body(head, body, depth)
    if kind is NodeKind.SWITCH:
        lines = [pad + "switch (" + _expr(node.children[0]) + ") {"]
        for child in node.children[1:]:
            if child.kind is NodeKind.SWITCH_CASE:
                lines.append(_INDENT * (depth + 1) + child.meta.get("raw", "default:"))
            else:
                lines.extend(_stmt_lines(child, depth + 2))
        lines.append(pad + "}")
        return lines
    if kind is NodeKind.BREAK:
        return [pad + "break" + (" " + node.value if node.value else "") + ";"]
    if kind is NodeKind.CONTINUE:
        return [pad + "continue" + (" " + node.value if node.value else "") + ";"]
    if kind is NodeKind.RETURN:
        if node.children:
            return [pad + "return " + _expr(node.children[0]) + ";"]
        return [pad + "return;"]
    if kind is NodeKind.THROW:
        return [pad + "throw " + _expr(node.children[0]) + ";"]
    if kind is NodeKind.TRY:
        return _try_lines(node, depth)
    if kind is NodeKind.SYNCHRONIZED:
        head = pad + "synchronized (" + _expr(node.children[0]) + ")"
        return _attach_body(head, node.children[1], depth)
    if kind is NodeKind.LABELED:
        inner = _stmt_lines(node.children[0], depth)
        inner[0] = pad + (node.value or "") + ": " + inner[0].lstrip()
        return inner
    if kind is NodeKind.STATEMENT_OTHER:
        raw = node.meta.get("raw", "")
        parts = raw.split("\n")
        lines = [pad + parts[0]]
        lines.extend(parts[1:])
        if node.value == "lambda" and not raw.rstrip().endswith(";"):
            lines[-1] += ";"
        return lines
    if kind is NodeKind.CLASS_DECLARATION:
        return _class_lines(node, depth)
    # expression used in statement position (defensive)
    return [pad + _expr(node) + ";"]


def _if_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    cond = node.children[0]
    then = node.children[1]
    has_else = len(node.children) > 2
    head = pad + "if (" + _expr(cond) + ")"
    # brace an else-less trailing if so the else below cannot re-bind to it
    force_brace = has_else and _ends_with_open_if(then)
    if force_brace:
        lines = [head + " {"]
        lines.extend(_stmt_lines(then, depth + 1))
        lines.append(pad + "}")
    else:
        lines = _attach_body(head, then, depth)
    if has_else:
        other = node.children[2]
        if other.kind is NodeKind.BLOCK:
            body = _stmt_lines(other, depth)
            lines[-1] += " else " + body[0].lstrip()
            lines.extend(body[1:])
        elif other.kind is NodeKind.IF:
            body = _if_lines(other, depth)
            lines[-1] += " else " + body[0].lstrip()
            lines.extend(body[1:])
        else:
            lines[-1] += " else"
            lines.extend(_stmt_lines(other, depth + 1))
    return lines


def _ends_with_open_if(node: AstNode) -> bool:
    if node.kind is NodeKind.IF:
        if len(node.children) < 3:
            return True
        return _ends_with_open_if(node.children[2])
    if node.kind in (
        NodeKind.WHILE_LOOP,
        NodeKind.FOR_LOOP,
        NodeKind.ENHANCED_FOR_LOOP,
        NodeKind.LABELED,
    ):
        return _ends_with_open_if(node.children[-1])
    return False


def _for_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    n_init = node.meta.get("n_init", 0)
    has_cond = node.meta.get("has_cond", False)
    n_update = node.meta.get("n_update", 0)
    idx = 0
    init_nodes = node.children[idx : idx + n_init]
    idx += n_init
    cond = node.children[idx] if has_cond else None
    idx += 1 if has_cond else 0
    update_nodes = node.children[idx : idx + n_update]
    idx += n_update
    body = node.children[idx]
    if init_nodes and init_nodes[0].kind is NodeKind.VARIABLE_DECLARATION:
        first = _variable_decl_text(init_nodes[0])
        rest = []
        for extra in init_nodes[1:]:
            frag = extra.value or ""
            frag += "[]" * extra.meta.get("dims", 0)
            if len(extra.children) > 2:
                frag += " = " + _expr(extra.children[2])
            rest.append(frag)
        init_text = ", ".join([first] + rest)
    else:
        init_text = ", ".join(_expr(e) for e in init_nodes)
    head = (
        pad
        + "for ("
        + init_text
        + "; "
        + (_expr(cond) if cond is not None else "")
        + "; "
        + ", ".join(_expr(e) for e in update_nodes)
        + ")"
    )
    return _attach_body(head, body, depth)


def _try_lines(node: AstNode, depth: int) -> list[str]:
    pad = _INDENT * depth
    head = pad + "try"
    if node.meta.get("resources"):
        head += " " + node.meta["resources"]
    children = list(node.children)
    block = children.pop(0)
    lines = _attach_body(head, block, depth)
    has_finally = node.meta.get("has_finally", False)
    fin = children.pop() if has_finally else None
    for clause in children:
        var, body = clause.children
        catch_head = (
            " catch ("
            + _type_text(var.children[0])
            + " "
            + (var.value or "")
            + ")"
        )
        body_lines = _stmt_lines(body, depth)
        lines[-1] += catch_head + " " + body_lines[0].lstrip()
        lines.extend(body_lines[1:])
    if fin is not None:
        body_lines = _stmt_lines(fin, depth)
        lines[-1] += " finally " + body_lines[0].lstrip()
        lines.extend(body_lines[1:])
    return lines


def _attach_body(head: str, body: AstNode, depth: int) -> list[str]:
    if body.kind is NodeKind.BLOCK:
        block = _stmt_lines(body, depth)
        lines = [head + " " + block[0].lstrip()]
        lines.extend(block[1:])
        return lines
    lines = [head]
    lines.extend(_stmt_lines(body, depth + 1))
    return lines


# ---- expressions ------------------------------------------------------------


def _expr(node: AstNode) -> str:
    kind = node.kind
    if kind is NodeKind.SIMPLE_NAME:
        return node.value or ""
    if kind is NodeKind.LITERAL:
        return node.value or ""
    if kind is NodeKind.TYPE_REFERENCE:
        return _type_text(node)
    if kind is NodeKind.FIELD_ACCESS:
        return _expr(node.children[0]) + "." + (node.children[1].value or "")
    if kind is NodeKind.METHOD_INVOCATION:
        return _invocation(node)
    if kind is NodeKind.OBJECT_CREATION:
        return _object_creation(node)
    if kind is NodeKind.ARRAY_CREATION:
        return _array_creation(node)
    if kind is NodeKind.ARRAY_ACCESS:
        return _expr(node.children[0]) + "[" + _expr(node.children[1]) + "]"
    if kind is NodeKind.ARRAY_INITIALIZER:
        return "{" + ", ".join(_expr(c) for c in node.children) + "}"
    if kind is NodeKind.ASSIGNMENT:
        return (
            _expr(node.children[0])
            + " "
            + (node.value or "=")
            + " "
            + _expr(node.children[1])
        )
    if kind is NodeKind.INFIX:
        return (
            "("
            + _expr(node.children[0])
            + " "
            + (node.value or "")
            + " "
            + _expr(node.children[1])
            + ")"
        )
    if kind is NodeKind.PREFIX:
        return "(" + (node.value or "") + _expr(node.children[0]) + ")"
    if kind is NodeKind.POSTFIX:
        return _expr(node.children[0]) + (node.value or "")
    if kind is NodeKind.CONDITIONAL:
        cond, then, other = node.children
        return "(" + _expr(cond) + " ? " + _expr(then) + " : " + _expr(other) + ")"
    if kind is NodeKind.CAST:
        return "((" + _type_text(node.children[0]) + ") " + _expr(node.children[1]) + ")"
    if kind is NodeKind.INSTANCEOF:
        return (
            "("
            + _expr(node.children[0])
            + " instanceof "
            + _type_text(node.children[1])
            + ")"
        )
    if kind is NodeKind.METHOD_REFERENCE:
        return node.value or ""
    if kind is NodeKind.STATEMENT_OTHER:
        return node.meta.get("raw", node.value or "")
    raise ValueError(f"cannot print {kind.label} as an expression")


def _invocation(node: AstNode) -> str:
    n_args = node.meta.get("n_args", 0)
    if node.meta.get("ctor_call"):
        args = node.children[1 : 1 + n_args]
        return (node.value or "") + _args_text(args)
    if node.meta.get("qualified"):
        qual = node.children[0]
        args = node.children[2 : 2 + n_args]
        return _expr(qual) + "." + (node.value or "") + _args_text(args)
    args = node.children[1 : 1 + n_args]
    return (node.value or "") + _args_text(args)


def _args_text(args: list[AstNode]) -> str:
    return "(" + ", ".join(_expr(a) for a in args) + ")"


def _object_creation(node: AstNode) -> str:
    n_args = node.meta.get("n_args", 0)
    text = "new " + _type_text(node.children[0])
    text += _args_text(node.children[1 : 1 + n_args])
    if node.meta.get("anon"):
        members = node.children[1 + n_args :]
        lines = [text + " {"]
        for member in members:
            lines.extend(_member_lines(member, 1))
        lines.append("}")
        return "\n".join(lines)
    return text


def _array_creation(node: AstNode) -> str:
    n_dim_exprs = node.meta.get("n_dim_exprs", 0)
    n_dims = node.meta.get("n_dims", 0)
    text = "new " + _type_text(node.children[0])
    dim_exprs = node.children[1 : 1 + n_dim_exprs]
    for e in dim_exprs:
        text += "[" + _expr(e) + "]"
    text += "[]" * (n_dims - n_dim_exprs)
    if node.meta.get("has_init"):
        text += _expr(node.children[-1])
    return text
