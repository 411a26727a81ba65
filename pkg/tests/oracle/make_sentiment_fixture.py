"""One-off generator for the frozen sentence-parity fixture.

Builds 200 sentences that exercise every scoring rule (boosters, negation,
caps emphasis, 'but' clauses, idioms, punctuation, neutral text), scores them
with the vendored reference engine, and writes sentence/compound pairs to
tests/fixtures/sentiment_parity_200.json. Run once; the output is committed
and never regenerated silently.
"""

import json
from pathlib import Path

from reference_vader import SentimentIntensityAnalyzer

HERE = Path(__file__).resolve().parent
LEXICON = HERE.parents[1] / "src" / "cfpress" / "sentiment" / "data" / "vader_lexicon.txt"
OUT = HERE.parent / "fixtures" / "sentiment_parity_200.json"


def build_sentences():
    sentences = []

    words = ["good", "bad", "great", "terrible", "happy", "sad",
             "crisis", "success", "failure", "win"]
    frames = [
        "The report was {w}.",
        "The report was very {w}.",
        "The report was not {w}.",
        "It was hardly {w} news.",
        "Critics called it utterly {w}.",
        "Nobody thought it was {w}, apparently.",
        "Officials said it was {w}, but residents disagreed.",
        "It was {w}!!",
        "Was it {w}?? Was it??",
        "AN UTTERLY {W} DAY for the markets.",
    ]
    for w in words:
        for frame in frames:
            sentences.append(frame.format(w=w, W=w.upper()))

    sentences += [
        "Health officials confirmed three new cases in the region on Tuesday.",
        "The premier said schools would remain closed until further notice.",
        "Hospitals reported a surge in admissions as the outbreak spread.",
        "Grocery shelves sat empty after a weekend of panic buying.",
        "Volunteers delivered meals to seniors isolated at home.",
        "The airline cancelled hundreds of flights, stranding travellers.",
        "A vaccine trial showed promising early results, researchers said.",
        "Unemployment claims hit a record high for the third straight week.",
        "The mayor praised frontline workers for their extraordinary effort.",
        "Police broke up a gathering that violated public health orders.",
        "Markets rallied on hopes of a swift economic recovery.",
        "The festival, a beloved summer tradition, was cancelled outright.",
        "Doctors warned the worst was yet to come without stricter measures.",
        "Families celebrated birthdays over video calls instead of in person.",
        "The shelter said adoptions had doubled since the lockdown began.",
        "Transit ridership collapsed, forcing deep service cuts.",
        "A local distillery switched to making hand sanitizer for clinics.",
        "Officials denied the policy was a failure, despite the numbers.",
        "The outbreak at the plant was never so severe as this week.",
        "Without doubt the response saved lives, the minister said.",
        "At least the weather cooperated for the outdoor clinic.",
        "This is the least effective measure announced so far.",
        "The team won the cup, but the parade was cancelled.",
        "It was not a good day, not a good week, and not a good month.",
        "REOPENING was GREAT news for shop owners!!",
        "Really?? They closed the parks again??",
        "The numbers aren't great, aren't good, and aren't improving.",
        "Nothing about the shutdown felt normal.",
        "No cases were reported for the first time since March.",
        "The province reported no new deaths on Sunday.",
        "Residents felt neither safe nor informed.",
        "The curve is flattening, which is certainly encouraging news.",
        "The charity raised more money than ever before.",
        "He said the quarantine hotel was kind of miserable.",
        "She described the aid package as sort of helpful.",
        "The playoffs were scarcely mentioned in the briefing.",
        "Case counts fell slightly for the second day.",
        "The ban was extremely unpopular with restaurant owners.",
        "Inspectors found the warehouse conditions deeply troubling.",
        "An especially cruel scam targeted isolated seniors.",
        "The rescue was a remarkably lucky break for the crew.",
        "Supplies remained critically low at rural clinics, nurses said.",
        "The premier's plan drew fierce criticism and rare praise alike.",
        "Sadly, the aquarium said it may not survive the year.",
        "Happily, every resident of the care home recovered.",
        "The budget update offered little comfort to laid-off workers.",
        "Its beloved patio reopened to a long, cheerful line.",
        "A string of break-ins left shop owners angry and afraid.",
        "The documentary was a surprise hit, delighting its producers.",
        "Streets stood silent where festivals once roared.",
        "Meh.",
        "Fine, whatever.",
        "The committee will meet on the third Thursday of each month.",
        "Rainfall totals reached 32 mm across the valley overnight.",
        "The bylaw takes effect on June 1 and applies to all vendors.",
        "Crews repaved the westbound lanes between Main St. and Oak Ave.",
        "The report runs 214 pages including appendices.",
        "Turnout was 61 per cent, up from 58 per cent in 2016.",
        "The ferry schedule changes next week, officials noted.",
        "Registration opens at 9 a.m. and closes at noon.",
        "The panel includes Dr. Singh, Ms. Park, and Prof. Lee.",
        "Shipments arrive Mondays via the northern route.",
        "The museum's west wing will close for renovations.",
        "Council deferred the zoning vote to next session.",
        "Average commute times were unchanged from last quarter.",
        "The survey covered 1,200 households in four regions.",
        "Its opening track is gorgeous, the rest forgettable.",
        "The bridge inspection found no structural issues.",
        "A rainbow :) appeared over the harbour after the storm.",
        "The keeper said the penguins were doing great :D these days.",
        "Fans were like :( after the season was scrapped.",
        "The outage lasted 14 hours, frustrating thousands of customers.",
        "An amazing volunteer effort rebuilt the playground in a weekend.",
        "The verdict brought relief to some and fury to others.",
        "Economists fear a prolonged slump despite the stimulus.",
        "The reopening plan is cautious, gradual, and widely supported.",
        "Critics say the delay is dangerous and indefensible.",
        "The harvest was abundant this fall, farmers reported.",
        "Smoke from distant wildfires choked the city for days.",
        "The choir's farewell concert moved the audience to tears.",
        "Negotiations collapsed late Friday, dimming hopes for a deal.",
        "A kind stranger paid every layaway order at the toy store.",
        "The recall affects 40,000 vehicles sold since 2018.",
        "Officials admitted the rollout had been a total disaster.",
        "The rookie's debut was nothing short of spectacular.",
        "Losses mounted as the storm battered the coast for a third day.",
        "The library's summer reading program returns in July.",
        "It is a truly wonderful, generous, hopeful story.",
        "The plant closure devastated the small town's economy.",
        "Morale improved dramatically after the schedule change.",
        "The inquiry uncovered serious, systemic failures.",
        "Tourists trickled back as restrictions eased.",
        "The award honours exceptional bravery by ordinary citizens.",
        "Prices climbed again, squeezing already stretched budgets.",
        "The mural project brought neighbours together all summer.",
        "A glitch wiped out bookings, and the airline apologized.",
        "The marathon returns with a record field of runners.",
        "Her recovery, doctors said, was nothing less than miraculous.",
        "Donations poured in, and the food bank called it a blessing.",
        "The blackout spoiled freezers full of food across the district.",
    ]
    return sentences


def main():
    sentences = build_sentences()
    assert len(sentences) == 200, f"fixture needs 200 sentences, got {len(sentences)}"
    assert len(set(sentences)) == 200, "fixture sentences must be unique"
    analyzer = SentimentIntensityAnalyzer(str(LEXICON))
    rows = [{"text": s, "compound": analyzer.polarity_scores(s)["compound"]}
            for s in sentences]
    OUT.write_text(json.dumps(rows, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows -> {OUT}")


if __name__ == "__main__":
    main()
