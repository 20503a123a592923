#!/usr/bin/env python3
"""
tpk - Setup Script
Installs requirements.txt, then self-checks the toolkit by generating a
proof in each calculus and translating one of them.

    python3 setup.py              # install and self-check
    python3 setup.py --skip-install
"""
import importlib.util
import subprocess
import sys

MIN_PYTHON = (3, 8)
REQUIRED_PACKAGES = ("networkx", "matplotlib", "lark", "pydantic", "pytest")


def banner(title):
    print(f"🧮 tpk proof toolkit - {title}")
    print("=" * 50)


def python_ok():
    found = sys.version_info[:3]
    print(f"🔍 Python {'.'.join(map(str, found))}")
    if found[:2] < MIN_PYTHON:
        print(f"❌ tpk needs Python {'.'.join(map(str, MIN_PYTHON))} or newer")
        return False
    return True


def pip_install():
    print("\n📦 pip install -r requirements.txt")
    result = subprocess.run([sys.executable, "-m", "pip", "install", "-r", "requirements.txt"])
    if result.returncode != 0:
        print(f"❌ pip exited with status {result.returncode}")
        return False
    return True


def packages_ok():
    """Every third-party package the toolkit imports is importable."""
    print("\n🧪 Checking packages...")
    missing = [name for name in REQUIRED_PACKAGES if importlib.util.find_spec(name) is None]
    for name in REQUIRED_PACKAGES:
        print(f"   {'❌' if name in missing else '✅'} {name}")
    return not missing


def self_check():
    """Generate, check and translate small proofs under the axioms T and 4."""
    print("\n🔬 Self-check (axioms T, 4)...")
    try:
        from models.display_proof import check_display_proof
        from models.display_rules import DisplayCalculus
        from models.labeled_proof import check_labeled_proof
        from models.labeled_rules import LabeledCalculus
        from translation.display_to_labeled import translate_d2l
        from translation.trace import summary
        from utils.generators import generate_proof
        from utils.proof_io import read_axioms
    except ImportError as e:
        print(f"❌ Import error: {e}")
        return False

    try:
        axioms = read_axioms("T\n4")
        display, labeled = DisplayCalculus.for_axioms(axioms), LabeledCalculus.for_axioms(axioms)

        proof = generate_proof(1, 3, "dkt", axioms)
        verdict = check_display_proof(proof, display)
        print(f"   {'✅' if verdict.ok else '❌'} display proof, {len(proof.nodes())} sequents")

        translated, trace = translate_d2l(proof, display, labeled=labeled)
        strict = check_labeled_proof(translated, labeled, strict=True, polytree=True)
        print(f"   {'✅' if strict.ok else '❌'} {summary(trace)}")
        return verdict.ok and strict.ok
    except Exception as e:
        print(f"❌ Self-check raised: {e}")
        return False


def main(argv):
    banner("Setup")
    steps = [python_ok]
    if "--skip-install" not in argv:
        steps.append(pip_install)
    steps += [packages_ok, self_check]
    for step in steps:
        if not step():
            print(f"\n❌ Setup stopped at {step.__name__}")
            return 1

    print("\n🎉 Setup completed successfully!")
    print("\n💡 Next steps:")
    print("   python3 main.py gen --seed 1 --out proof.json   # Generate a display proof")
    print("   python3 main.py check proof.json                # Check it")
    print("   python3 -m pytest tests                         # Run the test suite")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
