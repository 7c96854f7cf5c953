#!/usr/bin/env python3
"""Regenerate the shipped phrase table and language-detection profiles.

Run from the repository root after editing skill responses, translations,
stopword lists, or seed texts:

    python scripts/build_language_assets.py

The script fails if any skill response lacks a translation row, so the
"every response is translatable into every supported language" invariant
is enforced at build time, not discovered at runtime.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from tonebot.language import char_trigrams  # noqa: E402

ASSETS = ROOT / "src" / "tonebot" / "assets"

# (en, es, fr, de) per translatable phrase. The first block mirrors the
# dialog responses in exam_stress_skill.json plus the pipeline reprompt;
# the second covers common user inputs so non-English turns reach the
# English-only core without an external provider.
RESPONSES: list[tuple[str, str, str, str]] = [
    (
        "Hello! I am here to support you through exam season. How are you feeling about exams?",
        "¡Hola! Estoy aquí para apoyarte durante la época de exámenes. ¿Cómo te sientes con los exámenes?",
        "Bonjour ! Je suis là pour te soutenir pendant la période des examens. Comment te sens-tu par rapport aux examens ?",
        "Hallo! Ich bin hier, um dich durch die Prüfungszeit zu begleiten. Wie fühlst du dich bei den Prüfungen?",
    ),
    (
        "I am sorry you are feeling this way, exams can be overwhelming. It helps to create a study schedule, get enough sleep, and take breaks for movement. Would you like to hear more stress relief techniques?",
        "Siento que te sientas así, los exámenes pueden ser agobiantes. Ayuda crear un horario de estudio, dormir lo suficiente y tomar descansos para moverte. ¿Quieres escuchar más técnicas para aliviar el estrés?",
        "Je suis désolé que tu te sentes ainsi, les examens peuvent être accablants. Cela aide de créer un planning de révision, de dormir suffisamment et de faire des pauses pour bouger. Veux-tu entendre d'autres techniques contre le stress ?",
        "Es tut mir leid, dass du dich so fühlst, Prüfungen können überwältigend sein. Es hilft, einen Lernplan zu erstellen, genug zu schlafen und Pausen mit Bewegung zu machen. Möchtest du mehr Techniken gegen Stress hören?",
    ),
    (
        "Here are a few more ways to cope: eat healthy food, drink water, avoid distractions during study, reward yourself when achieving study goals, and talk to someone you trust.",
        "Aquí tienes algunas formas más de sobrellevarlo: come comida saludable, bebe agua, evita distracciones mientras estudias, prémiate cuando logres tus metas de estudio y habla con alguien de confianza.",
        "Voici encore quelques façons de faire face : mange sainement, bois de l'eau, évite les distractions pendant les révisions, récompense-toi quand tu atteins tes objectifs et parle à quelqu'un de confiance.",
        "Hier sind noch ein paar Wege, damit umzugehen: iss gesundes Essen, trink Wasser, vermeide Ablenkungen beim Lernen, belohne dich für erreichte Lernziele und sprich mit jemandem, dem du vertraust.",
    ),
    (
        "No problem. Remember to take care of yourself during exam season. I wish you well on your exams!",
        "No hay problema. Recuerda cuidarte durante la época de exámenes. ¡Te deseo mucha suerte en tus exámenes!",
        "Pas de problème. N'oublie pas de prendre soin de toi pendant la période des examens. Je te souhaite bonne chance pour tes examens !",
        "Kein Problem. Denk daran, während der Prüfungszeit gut auf dich aufzupassen. Ich wünsche dir viel Erfolg bei deinen Prüfungen!",
    ),
    (
        "That is great to hear! Keep up the good work, remember to reward yourself when achieving study goals, and good luck on your exams!",
        "¡Qué bueno escuchar eso! Sigue así, recuerda premiarte cuando logres tus metas de estudio, ¡y mucha suerte en tus exámenes!",
        "C'est super à entendre ! Continue comme ça, pense à te récompenser quand tu atteins tes objectifs, et bonne chance pour tes examens !",
        "Das ist schön zu hören! Mach weiter so, denk daran, dich für erreichte Lernziele zu belohnen, und viel Glück bei deinen Prüfungen!",
    ),
    (
        "Exam season can be really frustrating. Take some time to reflect, take a walk or run to get some exercise, and practice relaxation skills. Talking to someone you trust can also help.",
        "La época de exámenes puede ser muy frustrante. Tómate un tiempo para reflexionar, sal a caminar o a correr para hacer ejercicio y practica técnicas de relajación. Hablar con alguien de confianza también puede ayudar.",
        "La période des examens peut être vraiment frustrante. Prends un moment pour réfléchir, va marcher ou courir pour faire de l'exercice et pratique des exercices de relaxation. Parler à quelqu'un de confiance peut aussi aider.",
        "Die Prüfungszeit kann wirklich frustrierend sein. Nimm dir Zeit zum Nachdenken, geh spazieren oder laufen, um dich zu bewegen, und übe Entspannungstechniken. Mit jemandem zu reden, dem du vertraust, kann auch helfen.",
    ),
    (
        "Hi there! Tell me how you are feeling about your exams and I will do my best to help.",
        "¡Hola! Cuéntame cómo te sientes con tus exámenes y haré lo posible por ayudarte.",
        "Salut ! Dis-moi comment tu te sens par rapport à tes examens et je ferai de mon mieux pour t'aider.",
        "Hallo! Erzähl mir, wie du dich bei deinen Prüfungen fühlst, und ich werde mein Bestes tun, um zu helfen.",
    ),
    (
        "I can listen to how you are feeling about exams and suggest ways to cope with exam stress. Just tell me how you feel!",
        "Puedo escuchar cómo te sientes con los exámenes y sugerir formas de sobrellevar el estrés. ¡Solo dime cómo te sientes!",
        "Je peux écouter comment tu te sens par rapport aux examens et proposer des moyens de gérer le stress des examens. Dis-moi simplement comment tu te sens !",
        "Ich kann mir anhören, wie du dich bei den Prüfungen fühlst, und Wege gegen den Prüfungsstress vorschlagen. Sag mir einfach, wie du dich fühlst!",
    ),
    (
        "Goodbye! Good luck with your exams, you have got this!",
        "¡Adiós! Mucha suerte con tus exámenes, ¡tú puedes!",
        "Au revoir ! Bonne chance pour tes examens, tu vas y arriver !",
        "Auf Wiedersehen! Viel Glück bei deinen Prüfungen, du schaffst das!",
    ),
    (
        "I am not quite sure how you are feeling. Could you tell me a little more about how you feel about your exams?",
        "No estoy muy seguro de cómo te sientes. ¿Podrías contarme un poco más sobre cómo te sientes con tus exámenes?",
        "Je ne suis pas tout à fait sûr de ce que tu ressens. Peux-tu m'en dire un peu plus sur ce que tu ressens par rapport à tes examens ?",
        "Ich bin mir nicht ganz sicher, wie du dich fühlst. Kannst du mir etwas mehr darüber erzählen, wie du dich bei deinen Prüfungen fühlst?",
    ),
    (
        "I see. If you tell me how you are feeling about your exams, I can try to help.",
        "Entiendo. Si me cuentas cómo te sientes con tus exámenes, puedo intentar ayudarte.",
        "Je vois. Si tu me dis comment tu te sens par rapport à tes examens, je peux essayer de t'aider.",
        "Verstehe. Wenn du mir sagst, wie du dich bei deinen Prüfungen fühlst, kann ich versuchen zu helfen.",
    ),
    (
        "I did not catch that. Could you say it again?",
        "No entendí eso. ¿Podrías repetirlo?",
        "Je n'ai pas compris. Peux-tu répéter ?",
        "Das habe ich nicht verstanden. Kannst du das noch einmal sagen?",
    ),
]

INPUT_PHRASES: list[tuple[str, str, str, str]] = [
    ("I am stressed", "estoy estresado", "je suis stressé", "ich bin gestresst"),
    ("I am very stressed", "estoy muy estresado", "je suis très stressé", "ich bin sehr gestresst"),
    ("I am happy", "estoy feliz", "je suis content", "ich bin glücklich"),
    ("I am angry", "estoy enfadado", "je suis en colère", "ich bin wütend"),
    ("I am sad", "estoy triste", "je suis triste", "ich bin traurig"),
    ("hello", "hola", "bonjour", "hallo"),
    ("goodbye", "adiós", "au revoir", "auf wiedersehen"),
    ("thank you", "gracias", "merci beaucoup", "danke schön"),
    ("how are you", "cómo estás", "comment ça va", "wie geht es dir"),
]

LANGS = ("es", "fr", "de")

STOPWORDS = {
    "en": """
        the be to of and a in that have i it for not on with he as you do at
        this but his by from they we say her she or an will my one all would
        there their what so up out if about who get which go me when make can
        like time no just him know take into your some could them see other
        than then now only come its over think also back after use two how
        our work well way even new want because any these give day most us am
        are is was were been has had did doing does having feel feeling felt
        very really quite bit too much more less again hello hi hey thanks
        goodbye please yes ok okay
    """,
    "es": """
        de la que el en y a los del se las por un para con no una su al lo
        como más pero sus le ya o este sí porque esta entre cuando muy sin
        sobre también me hasta hay donde quien desde todo nos durante todos
        uno les ni contra otros ese eso ante ellos e esto mí antes algunos
        qué unos yo otro otras otra él tanto esa estos mucho quienes nada
        muchos cual poco ella estar estas algunas algo nosotros mi mis tú te
        ti tu tus ellas nosotras vosotros vosotras os mío soy eres es somos
        sois son estoy estás está estamos estáis están esté estés puedo
        puedes puede pueden quiero quieres siento sientes siente bien mal
        hola gracias adiós adios vale bueno cómo cuándo dónde
    """,
    "fr": """
        le la les de des du un une et est en que qui ne pas pour dans ce il
        elle je tu nous vous ils elles au aux avec sur se sa son ses mais ou
        où donc or ni car si mon ma mes ton ta tes notre votre leur leurs
        comme plus tout tous toute toutes bien être avoir cette ces par quoi
        quand comment pourquoi moi toi lui eux y a ai as avons avez ont suis
        es sommes êtes sont été était je' j' c' d' l' m' n' s' t' me te peux
        peut pouvons veux veut très trop peu beaucoup aussi encore déjà
        bonjour salut merci va vais allez revoir oui non ça cela
    """,
    "de": """
        der die das und ist in den von zu mit sich des auf für als auch es an
        werden aus er hat dass sie nach wird bei einer um am sind noch wie
        einem über einen so zum war haben nur oder aber vor zur bis mehr
        durch man sein wurde sei ich du wir ihr nicht ein eine mein dein mir
        dir mich dich uns euch ihm ihn ihnen kein keine was wer wo wann warum
        bin bist seid waren habe hast habt hatte können kann kannst will
        wollen möchte fühle fühlst fühlt sehr ganz gut schlecht ja nein
        hallo danke tschüss wiedersehen geht schön viel
    """,
}

# Seed paragraphs for the character-trigram profiles: everyday chat plus the
# exam-stress vocabulary this bot actually sees.
SEED_TEXTS = {
    "en": """
        Hello, how are you feeling today? I am feeling a little stressed about
        my exams this week. Exam season can be a stressful time for students,
        so make sure you get enough sleep, eat healthy food, drink water and
        take breaks while you study. Create a study schedule and reward
        yourself when you reach your study goals. If you feel anxious, sad or
        worried, talk to someone you trust about how you feel. Good luck with
        your exams, I am sure you will do well. Thank you for talking to me
        today, goodbye and see you later.
    """,
    "es": """
        Hola, ¿cómo te sientes hoy? Estoy un poco estresado por mis exámenes
        de esta semana. La época de exámenes puede ser un momento estresante
        para los estudiantes, así que duerme lo suficiente, come comida
        saludable, bebe agua y toma descansos mientras estudias. Crea un
        horario de estudio y prémiate cuando logres tus metas. Si te sientes
        ansioso, triste o preocupado, habla con alguien de confianza sobre
        cómo te sientes. Mucha suerte en tus exámenes, seguro que te irá muy
        bien. Gracias por hablar conmigo hoy, adiós y hasta luego.
    """,
    "fr": """
        Bonjour, comment te sens-tu aujourd'hui ? Je suis un peu stressé par
        mes examens cette semaine. La période des examens peut être un moment
        stressant pour les étudiants, alors dors suffisamment, mange
        sainement, bois de l'eau et fais des pauses pendant tes révisions.
        Crée un planning de révision et récompense-toi quand tu atteins tes
        objectifs. Si tu te sens anxieux, triste ou inquiet, parle à
        quelqu'un de confiance de ce que tu ressens. Bonne chance pour tes
        examens, je suis sûr que tu vas y arriver. Merci d'avoir parlé avec
        moi aujourd'hui, au revoir et à bientôt.
    """,
    "de": """
        Hallo, wie fühlst du dich heute? Ich bin etwas gestresst wegen meiner
        Prüfungen diese Woche. Die Prüfungszeit kann für Studenten eine
        stressige Zeit sein, also schlafe genug, iss gesundes Essen, trink
        Wasser und mach Pausen beim Lernen. Erstelle einen Lernplan und
        belohne dich, wenn du deine Lernziele erreichst. Wenn du dich ängstlich,
        traurig oder besorgt fühlst, sprich mit jemandem, dem du vertraust,
        darüber, wie du dich fühlst. Viel Glück bei deinen Prüfungen, ich bin
        sicher, dass du das schaffst. Danke, dass du heute mit mir gesprochen
        hast, auf Wiedersehen und bis bald.
    """,
}


def build_phrase_table() -> None:
    skill = json.loads((ASSETS / "exam_stress_skill.json").read_text(encoding="utf-8"))
    responses: list[str] = []

    def collect(node):
        responses.extend(node.get("responses", []))
        for child in node.get("children", []):
            collect(child)

    for node in skill["dialog"]:
        collect(node)

    known_en = {row[0] for row in RESPONSES}
    missing = [r for r in responses if r not in known_en]
    if missing:
        raise SystemExit(f"skill responses without translations: {missing!r}")

    out = ASSETS / "phrases.csv"
    with out.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source_lang", "target_lang", "source_phrase", "target_phrase"])
        for row in RESPONSES + INPUT_PHRASES:
            en = row[0]
            for lang, phrase in zip(LANGS, row[1:]):
                writer.writerow(["en", lang, en, phrase])
                writer.writerow([lang, "en", phrase, en])
    print(f"wrote {out} ({2 * len(LANGS) * (len(RESPONSES) + len(INPUT_PHRASES))} rows)")


def build_profiles() -> None:
    for code in ("en", "es", "fr", "de"):
        stopwords = sorted(set(STOPWORDS[code].split()))
        trigrams = char_trigrams(SEED_TEXTS[code])
        profile = {
            "code": code,
            "stopwords": stopwords,
            "trigrams": dict(sorted(trigrams.items())),
        }
        out = ASSETS / "profiles" / f"{code}.json"
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(
            json.dumps(profile, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
        )
        print(f"wrote {out} ({len(stopwords)} stopwords, {len(trigrams)} trigrams)")


if __name__ == "__main__":
    build_phrase_table()
    build_profiles()
