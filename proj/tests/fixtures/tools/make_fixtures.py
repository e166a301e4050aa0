#!/usr/bin/env python3
# Copyright 2026 The egycorpus Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled tweet and forum fixtures.

    python3 tests/fixtures/tools/make_fixtures.py tests/fixtures

Output is a pure function of the seed below; the files are checked in so
the tests never depend on running this script.
"""

import json
import os
import random
import sys

SEED = 2026

PHRASES = [
    "ازيك يا صاحبي عامل ايه النهارده",
    "والله الجو حر موت في القاهرة",
    "انا مش فاهم حاجة خالص من الكلام ده",
    "يا جماعة حد يعرف مطعم كويس في وسط البلد",
    "الماتش امبارح كان جامد جدا",
    "الأهلي كسب والزمالك خسر كالعادة",
    "عايز اروح اسكندرية الصيف ده",
    "المترو زحمة اوي النهارده",
    "ربنا يسهل الامتحانات قربت",
    "هو فين الشاي يا ماما",
    "الفيلم الجديد حلو بس طويل شوية",
    "مفيش نت في البيت من الصبح",
    "بكرة اجازة ولا ايه",
    "الاسعار غليت بشكل مش طبيعي",
    "انا جعان ومحدش عامل اكل",
    "الصورة دي تحفة بجد",
    "مين رايح الحفلة بالليل",
    "يا عم سيبك من الكلام ده",
    "الدكتور قال لازم ارتاح اسبوع",
    "شغلي بعيد وكل يوم مواصلات",
    "كُنْتُ فِي الْجَامِعَةِ النَّهَارْدَه",
    "أنا إبتديت أتعلم برمجة",
    "مـــصـــر أم الدنيا",
    "الكورة المصرية محتاجة تطوير",
    "عندي معاد مع الدكتور الساعة خمسة",
]

ENGLISH = [
    "good morning everyone have a nice day",
    "this is so funny I cannot stop laughing",
    "watching the match tonight with friends",
    "new video is out now check it",
]

EMOJI = ["😂", "❤️", "🔥", "👍🏽", "🇪🇬", "🙏", "😍"]

EGYPT_LOCATIONS = [
    "Cairo, Egypt", "القاهرة", "مصر", "Egypt 🇪🇬", "🇪🇬", "Alexandria", "الإسكندرية",
    "Giza", "الجيزة", "Mansoura, EGYPT", "Egyyyyypt", "مـصـر", "Égypte", "Port Said",
    "طنطا", "Tanta", "Aswan ❤️", "أسوان", "Luxor", "المنصورة", "Masr", "Zagazig",
    "6th of October, Giza", "Suez", "الاسماعيلية", "Hurghada", "Sohag", "اسيوط",
]

OTHER_LOCATIONS = [
    "Riyadh", "الرياض", "Dubai, UAE", "Kuwait", "Amman", "London", "عمان",
    "", "🌍", "somewhere over the rainbow", "Jeddah 🇸🇦", "Beirut",
]


def tweet_text(rng, i):
    parts = [rng.choice(PHRASES)]
    if rng.random() < 0.4:
        parts.append(rng.choice(PHRASES))
    kind = i % 12
    if kind == 0:
        parts.append("https://t.co/" + "".join(rng.choice("abcdefXYZ0123") for _ in range(8)))
    elif kind == 1:
        parts.insert(0, "@user_%d" % rng.randint(1, 999))
    elif kind == 2:
        parts.append("#مصر")
        parts.append("#Egypt")
    elif kind == 3:
        parts.append("رقمي " + str(rng.randint(1000000, 9999999)))
    elif kind == 4:
        parts.append("الكود " + str(rng.randint(10000000, 999999999)))
    elif kind == 5:
        parts.append("حلو" + "و" * rng.randint(4, 12))
    elif kind == 6:
        parts.append("!" * rng.randint(2, 9) + "؟" * rng.randint(1, 7))
    elif kind == 7:
        e = rng.choice(EMOJI)
        parts.append(e * rng.randint(1, 8))
    elif kind == 8:
        parts.append("\n\n" + rng.choice(PHRASES) + "\t ")
    elif kind == 9:
        parts.append("www.example.com/page?x=1")
    elif kind == 10:
        parts.append("٠١٢٣٤٥٦٧٨٩ و 01001234567")
    text = " ".join(parts)
    if rng.random() < 0.1:
        text = "  " + text + "   "
    return text


def make_tweets(rng):
    lines = []
    seen_texts = []
    for i in range(200):
        tid = 1450000000000000000 + i * 7919 + rng.randint(0, 7000)
        r = rng.random()
        if r < 0.06:
            text = rng.choice(ENGLISH)
        elif r < 0.11:
            text = rng.choice(["ازيك", "تمام يا باشا", "صباح الفل", "@someone شكرا"])
        elif r < 0.2 and seen_texts:
            text = rng.choice(seen_texts)
        else:
            text = tweet_text(rng, i)
            seen_texts.append(text)
        loc_roll = rng.random()
        if loc_roll < 0.7:
            location = rng.choice(EGYPT_LOCATIONS)
        else:
            location = rng.choice(OTHER_LOCATIONS)
        rec = {"id": tid if i % 5 else str(tid), "text": text,
               "user": {"location": location, "screen_name": "u%d" % i}}
        if i % 37 == 11:
            del rec["user"]
        if i % 41 == 3 and "user" in rec:
            rec["user"]["location"] = None
        lines.append(json.dumps(rec, ensure_ascii=(i % 3 == 0)))
    # A few broken lines that must only bump drop counters.
    lines.insert(17, '{"id": 1, "text": ')
    lines.insert(60, '["not", "an", "object"]')
    lines.insert(99, '{"text": "بدون رقم تعريف", "user": {"location": "مصر"}}')
    lines.insert(140, '{"id": 99, "text": 42, "user": {"location": "مصر"}}')
    lines.insert(150, "")
    return "\n".join(lines) + "\n"


FORUMS = {
    "fmisr": {"post": '<td class="alt1"><div class="msg">{body}</div></td>', "sig": True},
    "kooora": {"post": '<div class="post-body">{body}</div>', "sig": False},
    "almatareed": {"post": '<blockquote class="postcontent">{body}</blockquote>', "sig": True},
    "banatmasr": {"post": "<p>{body}</p>", "sig": False},
}

DECOR = [
    "[b]{t}[/b]", "[url=http://fmisr.com/t/1]{t}[/url]", "{t} [COLOR=red]!![/COLOR]",
    "&lt;b&gt;{t}&lt;/b&gt;", "{t} %D9%85%D8%B5%D8%B1", "{t} contact me: someone@example.com",
    "{t}<br>{t2}", "{t} http://www.kooora.com/?t=123", "{t} &amp; {t2}", "[quote]{t2}[/quote] {t}",
    "{t} 123456789012", "{t} ههههههههههه", "{t} ........", "{t}", "{t}", "{t}",
]


def forum_post(rng):
    tpl = rng.choice(DECOR)
    return tpl.format(t=rng.choice(PHRASES), t2=rng.choice(PHRASES))


def make_page(rng, forum, index, encoding_mode):
    spec = FORUMS[forum]
    posts = []
    for _ in range(rng.randint(2, 5)):
        if rng.random() < 0.12:
            body = rng.choice(ENGLISH)
        elif rng.random() < 0.08:
            body = "شكرا"
        else:
            body = forum_post(rng)
        posts.append(spec["post"].format(body=body))
        if spec["sig"] and rng.random() < 0.5:
            posts.append('<div class="signature">توقيع: %s</div>' % rng.choice(PHRASES))
    meta = ""
    if encoding_mode == "cp1256-meta":
        meta = '<meta http-equiv="Content-Type" content="text/html; charset=windows-1256">'
    elif encoding_mode == "utf8-meta":
        meta = '<meta charset="utf-8">'
    elif encoding_mode == "bogus":
        meta = '<meta charset="x-no-such-charset">'
    html = (
        "<!DOCTYPE html>\n<html dir=\"rtl\"><head>%s<title>منتدى %s - صفحة %d</title>"
        "<style>.msg{color:red}</style><script>var x = \"<b>لا</b>\";</script></head>\n"
        "<body><div class=\"nav\">الرئيسية &raquo; الأقسام</div>\n<table><tr>%s</tr></table>\n"
        "<div class=\"footer\">جميع الحقوق محفوظة &copy; 2012</div></body></html>\n"
        % (meta, forum, index, "\n".join(posts)))
    if encoding_mode in ("cp1256-meta", "cp1256-bare"):
        return html.encode("cp1256", errors="xmlcharrefreplace")
    data = html.encode("utf-8")
    if encoding_mode == "utf8-bom":
        data = b"\xef\xbb\xbf" + data
    return data


def make_forums(rng, root):
    modes = ["utf8-meta", "utf8-bare", "cp1256-meta", "cp1256-bare", "utf8-bom"]
    names = sorted(FORUMS)
    count = 0
    for n in range(50):
        forum = names[n % len(names)]
        section = ["sports", "health", "travel", "tech"][(n // 4) % 4]
        mode = "bogus" if n == 29 else modes[rng.randrange(len(modes))]
        ext = ".htm" if n % 7 == 0 else ".html"
        path = os.path.join(root, forum, section, "page_%02d%s" % (n, ext))
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "wb") as f:
            f.write(make_page(rng, forum, n, mode))
        count += 1
    return count


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures"
    rng = random.Random(SEED)
    os.makedirs(os.path.join(out, "etc"), exist_ok=True)
    with open(os.path.join(out, "etc", "tweets.jsonl"), "w", encoding="utf-8") as f:
        f.write(make_tweets(rng))
    make_forums(rng, os.path.join(out, "efc"))


if __name__ == "__main__":
    main()
