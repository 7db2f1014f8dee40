"""40-message spam/ham mini corpus built from templates with a fixed seed."""
import csv
import pathlib
import random

SEED = 7
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures" / "sms_mini.csv"

SPAM = [
    "WIN a FREE prize now! Call {n} to claim your cash award",
    "Congratulations you have won a free holiday, text CLAIM to {n}",
    "URGENT! Your mobile number won cash. Call {n} now to claim",
    "Free entry to win a prize draw, text WIN to {n} now",
    "You are selected for a FREE ringtone offer, reply YES to {n}",
    "Claim your guaranteed cash prize today! Call {n} free",
    "Txt STOP to end. Win free tickets, call {n} now urgent",
    "Your account won a bonus award, call {n} to claim the cash",
]
HAM = [
    "Are we still meeting for lunch {d}?",
    "I will be home late tonight, can you pick up milk",
    "Ok see you at the station {d} then",
    "Sorry I missed your call, will ring you back later",
    "Did you finish the report for the meeting {d}",
    "Thanks for dinner last night it was lovely",
    "Going to the gym later, want to come along",
    "Can you send me the photos from the trip",
]
DAYS = ["today", "tomorrow", "on friday", "tonight", "later"]


def main():
    rng = random.Random(SEED)
    rows = []
    for i in range(20):
        rows.append(["spam", rng.choice(SPAM).format(n=rng.randint(80000, 89999))])
        rows.append(["ham", rng.choice(HAM).format(d=rng.choice(DAYS))])
    rng.shuffle(rows)
    with OUT.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["label", "text"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
