"""Grading a rule's consequent versus grading the whole rule.

Birds fly, penguins don't; Tweety is a bird, Opus a penguin. Writing the
default as ``Bird(x) -> G(Flies(x), 5)`` grades only the conclusion, so
giving up on Opus flying leaves the rule itself intact and Tweety still
flies. Grading the entire rule, ``G(Bird(x) -> Flies(x), 5)``, means the
whole rule loses when it collides with the stronger penguin rule — and with
it the conclusion that Tweety flies.
"""

from logag import Canon, graded_consequence, parse_term, parse_theory

CONSEQUENT_GRADED = """
theory consequent_graded.
domain b = {Tweety, Opus}.
forall x in b: Bird(x) -> G(Flies(x), 5).
forall x in b: Penguin(x) -> G(~Flies(x), 10).
forall x in b: Penguin(x) -> Bird(x).
Penguin(Opus).
Bird(Tweety).
"""

RULE_GRADED = """
theory rule_graded.
G((Bird(Tweety) -> Flies(Tweety)) & (Bird(Opus) -> Flies(Opus)), 5).
G((Penguin(Tweety) -> ~Flies(Tweety)) & (Penguin(Opus) -> ~Flies(Opus)), 10).
Penguin(Tweety) -> Bird(Tweety).
Penguin(Opus) -> Bird(Opus).
Penguin(Opus).
Bird(Tweety).
"""


def ask(theory, label):
    canon = Canon("sum", "max", 1)
    print(f"{label}:")
    for text in ("Flies(Tweety)", "~Flies(Opus)", "Flies(Opus)"):
        verdict = graded_consequence(theory, canon, parse_term(text))
        print(f"   {text:16s} {'yes' if verdict else 'no'}")


def main():
    ask(parse_theory(CONSEQUENT_GRADED), "consequent graded (de re)")
    print()
    ask(parse_theory(RULE_GRADED), "whole rule graded (de dicto)")


if __name__ == "__main__":
    main()
