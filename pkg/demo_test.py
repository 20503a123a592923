#!/usr/bin/env python3
"""
Demo Test Script for the tpk proof toolkit
Walks through the main features on small examples.
"""
import os
import random
import sys

# Add the project root to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))


def demo_proof_toolkit():
    """Demonstrate the features of the toolkit."""
    print("🧮 tpk proof toolkit - Feature Demonstration")
    print("=" * 60)

    try:
        from models.display_rules import DisplayCalculus
        from models.errors import TranslationError
        from models.labeled_proof import check_labeled_proof
        from models.labeled_rules import LabeledCalculus
        from models.labeled_sequent import canonical_form, is_polytree
        from models.proof_tree import ProofTree
        from translation.display_to_labeled import translate_d2l
        from translation.equivalence import derive_equivalence
        from translation.labeled_to_display import translate_l2d
        from translation.notation import to_display, to_labeled
        from translation.trace import summary
        from utils.generators import DisplayProofGenerator, random_polytree_sequent
        from utils.parser import parse_display_sequent
        from utils.proof_io import read_axioms
        from visualization.sequent_visualizer import plot_proof_tree, plot_sequent_graph, sequent_to_dot

        print("✅ All modules imported successfully")

        # Rules generated from the euclidean axiom
        print("\n📐 Rules for <P><F>p -> <F>p:")
        axioms = read_axioms("5")
        display = DisplayCalculus.for_axioms(axioms)
        labeled = LabeledCalculus.for_axioms(axioms)
        for rule in display.pt_rules() + labeled.pt_rules():
            print(f"   • {rule.name}: {' / '.join(str(p) for p in rule.premises)}  ==>  {rule.conclusion}")

        # Notations
        print("\n🔁 Notational translation:")
        d = parse_display_sequent("@(*p o <P>q) |- *@q")
        s = to_labeled(d, "w0")
        print(f"   • {d}  ↦  {s}")
        print(f"   • polytree: {bool(is_polytree(s))}")
        print(f"   • back at w0: {to_display(s, 'w0')}")
        print(f"   • canonical form: {canonical_form(s)}")

        # Display equivalence
        print("\n🔀 Display equivalence:")
        first, second = parse_display_sequent("p |- q"), parse_display_sequent("*q |- *p")
        derivation = derive_equivalence(first, second, display)
        print(f"   • {first}  ⟹  {second} in {derivation.height()} step(s)")

        # Translation round trip on a generated proof
        print("\n🎲 Translation of a generated proof:")
        generator = DisplayProofGenerator(random.Random(7), display)
        proof = generator.generate(3)
        print(f"   • Display proof of {proof.conclusion}: {len(proof.nodes())} sequents")
        labeled_proof, trace = translate_d2l(proof, display, labeled=labeled)
        print(f"   • {summary(trace)}")
        verdict = check_labeled_proof(labeled_proof, labeled, strict=True, polytree=True)
        print(f"   • strict polytree proof: {verdict.ok} ({', '.join(verdict.notes)})")
        back, trace = translate_l2d(labeled_proof, labeled)
        print(f"   • {summary(trace)}")

        # Visualization
        print("\n🎨 Visualization:")
        sample = random_polytree_sequent(random.Random(3), 5, 4)
        print("   • DOT of a random polytree sequent:")
        for line in sequent_to_dot(sample).splitlines():
            print(f"     {line}")
        plot_proof_tree(proof, "demo_proof.png")
        print("   • Proof tree saved as demo_proof.png")
        plot_sequent_graph(sample, "demo_sequent.png")
        print("   • Sequent graph saved as demo_sequent.png")

        # Error handling
        print("\n⚠️ Error Handling:")
        leaf = ProofTree("id", parse_display_sequent("p |- p"))
        with_cut = ProofTree("cut", leaf.conclusion, [leaf, leaf])
        try:
            translate_d2l(with_cut, display)
            print("   • Cut translation: ❌ Failed")
        except TranslationError as e:
            print(f"   • Cut translation rejected: {e}")

        print("\n🎉 DEMONSTRATION COMPLETE!")
        print("=" * 60)
        return True

    except Exception as e:
        print(f"\n❌ Demonstration failed: {e}")
        import traceback
        traceback.print_exc()
        return False


if __name__ == "__main__":
    success = demo_proof_toolkit()
    sys.exit(0 if success else 1)
