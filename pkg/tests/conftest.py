"""Shared fixtures: golden corpus paths and a synthetic labeled mini-corpus."""

import json
from pathlib import Path

import pytest

from bigo.jast.nodes import SourceUnit

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"

# Small labeled programs, one texture per complexity class. Used by the CLI
# and experiment tests; three per class so a stratified 0.8 split works.
_TEMPLATES = {
    "1": """\
class {name} {{
    public static void main(String[] args) {{
        int x = {i};
        System.out.println(x + 1);
    }}
}}
""",
    "logn": """\
class {name} {{
    public static void main(String[] args) {{
        int n = new java.util.Scanner(System.in).nextInt();
        int steps = 0;
        while (n > 1) {{
            n = n / 2;
            steps++;
        }}
        System.out.println(steps + {i});
    }}
}}
""",
    "n": """\
class {name} {{
    public static void main(String[] args) {{
        int n = new java.util.Scanner(System.in).nextInt();
        long sum = {i};
        for (int i = 0; i < n; i++) {{
            sum += i;
        }}
        System.out.println(sum);
    }}
}}
""",
    "nlogn": """\
import java.util.Arrays;

class {name} {{
    public static void main(String[] args) {{
        int n = new java.util.Scanner(System.in).nextInt();
        int[] a = new int[n];
        for (int i = 0; i < n; i++) {{
            a[i] = n - i + {i};
        }}
        Arrays.sort(a);
        System.out.println(a[0]);
    }}
}}
""",
    "n_square": """\
class {name} {{
    public static void main(String[] args) {{
        int n = new java.util.Scanner(System.in).nextInt();
        int count = {i};
        for (int i = 0; i < n; i++) {{
            for (int j = 0; j < n; j++) {{
                count += i * j;
            }}
        }}
        System.out.println(count);
    }}
}}
""",
}

_PREFIX = {"1": "C", "logn": "L", "n": "N", "nlogn": "S", "n_square": "Q"}


def golden_units() -> list[SourceUnit]:
    return [
        SourceUnit(id=path.name, text=path.read_text())
        for path in sorted(GOLDEN.glob("*.java"))
    ]


def golden_expected() -> dict[str, dict[str, int]]:
    data = json.loads((GOLDEN / "expected.json").read_text())
    return {
        name: {k: v for k, v in fields.items() if k != "notes"}
        for name, fields in data.items()
    }


def make_mini_units(per_class: int = 3) -> list[SourceUnit]:
    units = []
    for label, template in _TEMPLATES.items():
        for i in range(1, per_class + 1):
            name = f"{_PREFIX[label]}{i}"
            units.append(
                SourceUnit(
                    id=f"{label}/{name}.java",
                    text=template.format(name=name, i=i),
                    label=label,
                )
            )
    return units


@pytest.fixture(scope="session")
def mini_units() -> list[SourceUnit]:
    return make_mini_units()


@pytest.fixture()
def mini_corpus_dir(tmp_path: Path) -> Path:
    """The same programs laid out as a directory-per-class corpus."""
    root = tmp_path / "corpus"
    for unit in make_mini_units():
        path = root / unit.id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(unit.text)
    return root
