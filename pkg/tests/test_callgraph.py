"""Call graph construction, cycle detection, and reachability."""

from bigo.jast import parse
from bigo.jast.callgraph import (
    build_call_graph,
    method_key,
    reachable_from_main,
    reachable_method_declarations,
)


def graph_of(source):
    return build_call_graph(parse(source))


def test_method_key_format():
    assert method_key("main", 1) == "main/1"


def test_declarations_registered():
    g = graph_of("class A { void f() {} int g(int x) { return x; } }")
    assert set(g.declarations) == {"f/0", "g/1"}


def test_self_loop_cycle():
    g = graph_of("class A { int f(int n) { return f(n - 1); } }")
    assert "f/1" in g.successors("f/1")
    assert g.has_cycle_among({"f/1"})


def test_mutual_cycle():
    g = graph_of(
        "class A { void f() { g(); } void g() { f(); } }"
    )
    assert g.has_cycle_among({"f/0", "g/0"})


def test_acyclic_chain():
    g = graph_of("class A { void f() { g(); } void g() {} }")
    assert not g.has_cycle_among({"f/0", "g/0"})


def test_cycle_detection_restricted_to_given_keys():
    g = graph_of("class A { void f() { g(); } void g() { f(); } }")
    assert not g.has_cycle_among({"f/0"})


def test_unresolved_call_becomes_library_node():
    g = graph_of("class A { void f() { System.out.println(1); } }")
    assert "lib:println/1" in g.successors("f/0")


def test_overloads_resolved_by_arity():
    g = graph_of(
        "class A { void f() { h(1); h(1, 2); } void h(int a) {} void h(int a, int b) {} }"
    )
    assert {"h/1", "h/2"} <= g.successors("f/0")


def test_constructor_edge():
    g = graph_of(
        "class A { A(int x) {} void f() { A a = new A(5); } }"
    )
    assert "A/1" in g.successors("f/0")


def test_reachable_from_main():
    g = graph_of(
        "class A {"
        " public static void main(String[] a) { used(); }"
        " static void used() {}"
        " static void dead() {}"
        " }"
    )
    reach = reachable_from_main(g)
    assert "main/1" in reach
    assert "used/0" in reach
    assert "dead/0" not in reach


def test_no_main_falls_back_to_everything():
    g = graph_of("class A { void f() {} void g() {} }")
    reach = reachable_from_main(g)
    assert {"f/0", "g/0"} <= reach


def test_anonymous_body_methods_not_registered():
    g = graph_of(
        "class A { void f() {"
        " Runnable r = new Runnable() { public void run() {} };"
        " } }"
    )
    assert "run/0" not in g.declarations


def test_reachable_declarations_in_order():
    root = parse(
        "class A {"
        " public static void main(String[] a) { z(); b(); }"
        " static void z() {}"
        " static void b() {}"
        " static void dead() {}"
        " }"
    )
    decls = reachable_method_declarations(root)
    assert [d.value for d in decls] == ["main", "z", "b"]
