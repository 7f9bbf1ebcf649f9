#!/usr/bin/env python3
"""Generates the synthetic fixture corpus under data/fixture/.

The output is fully determined by SEED, so rerunning the script reproduces the
committed files byte for byte.

    python3 tools/make_fixture.py [output_dir]
"""
import html
import json
import random
import sys
from pathlib import Path

SEED = 20170101
N_ROWS = 1000

LANG_TAG = {"csharp": "c#", "java": "java", "javascript": "javascript", "python": "python"}

# Topic tags per language, most frequent first.
TOPICS = {
    "csharp": ["asp.net", ".net", "linq", "wpf", "winforms", "entity-framework", "unity3d", "xaml",
               "async-await", "reflection", "generics", "wcf", "nunit", "roslyn", "dependency-injection"],
    "java": ["android", "spring", "swing", "hibernate", "maven", "jdbc", "multithreading", "generics",
             "junit", "jpa", "java-stream", "servlets", "gradle", "jackson", "reflection"],
    "javascript": ["jquery", "html", "css", "node.js", "angularjs", "reactjs", "ajax", "json", "dom",
                   "express", "promise", "ecmascript-6", "webpack", "d3.js", "typescript"],
    "python": ["django", "pandas", "numpy", "flask", "list", "dictionary", "regex", "matplotlib",
               "scipy", "tkinter", "asyncio", "sqlalchemy", "pytest", "generator", "decorator"],
}
COMMON = ["arrays", "string", "function", "loops", "class", "performance", "debugging"]

VALID_CODE = {
    "csharp": [
        "public class Cache<T> where T : class\n{\n    private readonly Dictionary<string, T> items = new();\n\n"
        "    public T Get(string key) => items.TryGetValue(key, out var v) ? v : null;\n}\n",
        "using System.Linq;\n\nclass Report\n{\n    static int Total(List<Order> orders)\n    {\n"
        "        // sum of paid orders\n        return orders.Where(o => o.Paid).Sum(o => o.Amount);\n    }\n}\n",
        "public class Downloader\n{\n    public async Task<string> FetchAsync(HttpClient client, string url)\n    {\n"
        "        var response = await client.GetAsync(url);\n        response.EnsureSuccessStatusCode();\n"
        "        return await response.Content.ReadAsStringAsync();\n    }\n}\n",
        "enum Color { Red, Green, Blue }\n\nstruct Point\n{\n    public int X;\n    public int Y;\n}\n",
    ],
    "java": [
        "public class Counter {\n    private int count;\n\n    public synchronized void increment() {\n"
        "        count++;\n    }\n\n    public int get() {\n        return count;\n    }\n}\n",
        "import java.util.List;\nimport java.util.stream.Collectors;\n\nclass Names {\n"
        "    static List<String> upper(List<String> in) {\n"
        "        return in.stream().map(String::toUpperCase).collect(Collectors.toList());\n    }\n}\n",
        "public interface Shape {\n    double area();\n}\n\nclass Circle implements Shape {\n"
        "    private final double r;\n    Circle(double r) { this.r = r; }\n"
        "    public double area() { return Math.PI * r * r; }\n}\n",
        "class Main {\n    public static void main(String[] args) throws Exception {\n"
        "        for (int i = 0; i < args.length; i++) {\n            System.out.println(args[i]);\n"
        "        }\n    }\n}\n",
    ],
    "javascript": [
        "function debounce(fn, wait) {\n  let timer;\n  return function (...args) {\n"
        "    clearTimeout(timer);\n    timer = setTimeout(() => fn.apply(this, args), wait);\n  };\n}\n",
        "const total = items\n  .filter(item => item.active)\n  .reduce((sum, item) => sum + item.price, 0);\n"
        "console.log(`total: ${total}`);\n",
        "class Stack {\n  constructor() {\n    this.items = [];\n  }\n  push(x) {\n    this.items.push(x);\n  }\n"
        "  pop() {\n    return this.items.pop();\n  }\n}\n",
        "$(document).ready(function () {\n  $('#save').on('click', function (e) {\n    e.preventDefault();\n"
        "    $.post('/api/save', { id: 3 }, function (data) {\n      alert(data.message);\n    });\n  });\n});\n",
    ],
    "python": [
        "def chunks(items, size):\n    for i in range(0, len(items), size):\n        yield items[i:i + size]\n",
        "import pandas as pd\n\ndf = pd.read_csv('data.csv')\nsummary = df.groupby('city')['price'].mean()\n"
        "print(summary.head())\n",
        "class Node:\n    def __init__(self, value, children=None):\n        self.value = value\n"
        "        self.children = children or []\n\n    def depth(self):\n"
        "        return 1 + max((c.depth() for c in self.children), default=0)\n",
        "with open('log.txt') as f:\n    counts = {}\n    for line in f:\n        key = line.split()[0]\n"
        "        counts[key] = counts.get(key, 0) + 1\n",
    ],
}

INVALID_CODE = {
    "csharp": [
        "var list = new List<int>();\nlist.Add(1);\n",
        "public void Save() {\n    db.SaveChanges(\n}\n",
        "Console.WriteLine(\"value: \" + x)\n",
    ],
    "java": [
        "System.out.println(\"hello\");\n",
        "public void run() {\n    for (int i = 0; i < n; i++ {\n    }\n}\n",
        "String s = reader.readLine()\nint n = Integer.parseInt(s);\n",
    ],
    "javascript": [
        "<div id=\"app\">\n  <button onclick=\"go()\">Go</button>\n</div>\n",
        "function load( {\n  return fetch(url);\n}\n",
        "var x = {a: 1, b: 2;\n",
    ],
    "python": [
        "print \"hello world\"\n",
        "def f(x):\nreturn x * 2\n",
        "for i in range(10)\n    print(i)\n",
    ],
}

GOOD_SENTENCES = [
    "I am trying to understand how the {topic} module handles this case.",
    "Here is a minimal example that reproduces the behaviour I described.",
    "The documentation mentions configuration options, but none of them seem relevant.",
    "I expected the result to be sorted, however the output keeps the insertion order.",
    "Performance degrades noticeably once the collection grows beyond ten thousand elements.",
    "I already checked the related questions and their suggestions did not change anything.",
    "Is there an idiomatic way to express this without allocating an intermediate collection?",
    "Thanks in advance, any pointers would be really helpful.",
    "The interesting part is that it works perfectly on my development machine.",
    "My understanding is that the framework should dispose the connection automatically.",
    "Could someone explain why the compiler accepts the first version but rejects the second?",
    "I would appreciate an explanation of the underlying mechanism rather than a workaround.",
]
BAD_SENTENCES = [
    "it dont work",
    "help me fix this code",
    "why error",
    "this is so stupid and broken",
    "i need this urgent",
    "code not working plz help",
    "what is wrong here",
    "how to do this",
    "give me the code",
    "i hate this weird thing",
]
GOOD_TITLES = [
    "How to avoid re-reading the {topic} configuration on every request",
    "Why does {topic} return a copy instead of a reference here",
    "Idiomatic way to merge two sorted sequences with {topic}",
    "Unexpected ordering of results when using {topic} together with generics",
    "Difference between lazy and eager evaluation in {topic}",
]
BAD_TITLES = [
    "{topic} not working",
    "help with {topic}",
    "error in my code",
    "{topic} problem",
    "please help urgent",
]


def pick_tags(rng, lang, promoted):
    topics = TOPICS[lang]
    tags = [LANG_TAG[lang]]
    n = rng.randint(1, 3) if promoted else rng.randint(1, 2)
    while len(tags) < n + 1:
        if promoted:
            # uniform over the topic list: rarer topics show up often
            t = rng.choice(topics)
        else:
            # heavily skewed towards the head of the list and generic tags
            t = rng.choice(COMMON) if rng.random() < 0.5 else topics[min(int(rng.expovariate(1.2)), len(topics) - 1)]
        if t not in tags:
            tags.append(t)
    return tags


def make_body(rng, lang, promoted, topic):
    parts = []
    if promoted:
        for s in rng.sample(GOOD_SENTENCES, rng.randint(3, 6)):
            parts.append(s.format(topic=topic))
    else:
        for s in rng.sample(BAD_SENTENCES, rng.randint(1, 2)):
            parts.append(s)
    paragraphs = ["<p>" + html.escape(" ".join(parts[i:i + 3]), quote=False) + "</p>" for i in range(0, len(parts), 3)]
    has_code = rng.random() < (0.85 if promoted else 0.6)
    if has_code:
        valid = rng.random() < (0.8 if promoted else 0.4)
        code = rng.choice(VALID_CODE[lang] if valid else INVALID_CODE[lang])
        block = "<pre><code>" + html.escape(code, quote=False) + "</code></pre>"
        paragraphs.insert(1 if len(paragraphs) > 1 else len(paragraphs), block)
    if promoted and rng.random() < 0.3:
        paragraphs.append("<p>I also tried <code>" + html.escape(topic) + "</code> directly &amp; got the same.</p>")
    return "".join(paragraphs)


def make_question(rng, qid):
    lang = rng.choice(sorted(LANG_TAG))
    promoted = rng.random() < 0.8
    # a quarter of the questions borrow the other class's writing style
    careful = promoted != (rng.random() < 0.25)
    tags = pick_tags(rng, lang, promoted != (rng.random() < 0.25))
    topic = tags[1] if len(tags) > 1 else LANG_TAG[lang]
    title = rng.choice(GOOD_TITLES if careful else BAD_TITLES).format(topic=topic)
    body = make_body(rng, lang, careful, topic)
    score = rng.randint(1, 60) if promoted else -rng.randint(1, 8)
    r = rng.random()
    if r < 0.02:
        score = 0
    answers = 0 if rng.random() < 0.03 else rng.randint(1, 9)
    year = 2018 if rng.random() < 0.03 else rng.randint(2009, 2017)
    date = "%04d-%02d-%02dT%02d:%02d:%02d" % (year, rng.randint(1, 12), rng.randint(1, 28), rng.randint(0, 23),
                                               rng.randint(0, 59), rng.randint(0, 59))
    return {"id": qid, "title": title, "body": body, "tags": ";".join(tags), "score": score,
            "answer_count": answers, "creation_date": date}


def dump_row(q):
    tags = "".join("<%s>" % t for t in q["tags"].split(";"))
    attrs = [("Id", q["id"]), ("PostTypeId", 1), ("CreationDate", q["creation_date"] + ".000"),
             ("Score", q["score"]), ("Body", q["body"]), ("Title", q["title"]), ("Tags", tags),
             ("AnswerCount", q["answer_count"])]
    def attr(v):
        return html.escape(str(v), quote=True).replace("\n", "&#xA;")
    return "  <row " + " ".join('%s="%s"' % (k, attr(v)) for k, v in attrs) + " />"


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "fixture"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    questions = [make_question(rng, 1000 + i) for i in range(N_ROWS)]
    with open(out / "questions.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for q in questions:
            f.write(json.dumps(q, ensure_ascii=False) + "\n")
        # two malformed rows exercise the warning path
        f.write('{"id": 5000, "title": "truncated"\n')
        f.write('{"id": -3, "title": "t", "body": "", "tags": "java", "score": 1, "answer_count": 1, '
                '"creation_date": "2015-01-01"}\n')
    with open(out / "posts_sample.xml", "w", encoding="utf-8", newline="\n") as f:
        f.write('<?xml version="1.0" encoding="utf-8"?>\n<posts>\n')
        for q in questions[:20]:
            f.write(dump_row(q) + "\n")
        f.write('  <row Id="99999" PostTypeId="2" ParentId="1000" CreationDate="2015-03-01T10:00:00.000" '
                'Score="3" Body="&lt;p&gt;An answer.&lt;/p&gt;" />\n')
        f.write("</posts>\n")


if __name__ == "__main__":
    main()
