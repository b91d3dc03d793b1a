"""Comprehension demo: Monte Carlo benchmark of the voice-command loop.

A speaker stands at a random spot in a 6 m x 6 m room and says
"bring me tea". The robot listens with its two microphones, and when the
capture is poor it asks for a repeat (turning toward the voice) or walks
up to the speaker before listening again. The benchmark reports how
often the finally accepted intent is the correct one.

Run:  python demos/comprehension_demo.py
"""

from assistbot.scenarios import comprehension_benchmark


def main() -> None:
    for seed in (0, 1, 2):
        result = comprehension_benchmark(trials=1000, seed=seed)
        print(f"seed {seed}: {result['successes']}/{result['trials']} "
              f"correct ({result['success_rate']:.1%})")


if __name__ == "__main__":
    main()
