"""Shared test helpers."""

from datetime import date
from pathlib import Path

from cfpress.corpus import Article, Corpus, article_id

FIXTURES = Path(__file__).parent / "fixtures"


def make_article(title="Sample title", body="Sample body text.",
                 description="Sample description", day=date(2020, 3, 10),
                 origin="real", model_tag=None, byline=None, url=None):
    return Article(id=article_id(title, body), title=title,
                   description=description, byline=byline, published_at=day,
                   url=url, body=body, origin=origin, model_tag=model_tag)


def make_corpus(bodies, label="real", origin="real", start=date(2020, 2, 1)):
    articles = []
    for i, body in enumerate(bodies):
        day = date.fromordinal(start.toordinal() + 3 * i)
        articles.append(make_article(title=f"Title {i}", body=body,
                                     description=f"Description {i}", day=day,
                                     origin=origin))
    return Corpus(articles=tuple(articles), label=label)
