#pragma once

// Generated by tools/embed_resources.py from data/. Do not edit by hand;
// tests/test_resources.cpp checks that the two copies agree.

#include <string_view>

namespace storyscope::resources {

// data/stopwords_en.txt
inline constexpr std::string_view kStopwordsEn = R"__(# English stopword list used by the language filter
i
me
my
myself
we
our
ours
ourselves
you
your
yours
yourself
yourselves
he
him
his
himself
she
her
hers
herself
it
its
itself
they
them
their
theirs
themselves
what
which
who
whom
this
that
these
those
am
is
are
was
were
be
been
being
have
has
had
having
do
does
did
doing
a
an
the
and
but
if
or
because
as
until
while
of
at
by
for
with
about
against
between
into
through
during
before
after
above
below
to
from
up
down
in
out
on
off
over
under
again
further
then
once
here
there
when
where
why
how
all
any
both
each
few
more
most
other
some
such
no
nor
not
only
own
same
so
than
too
very
s
t
can
will
just
don
should
now
d
ll
m
o
re
ve
y
ain
aren
couldn
didn
doesn
hadn
hasn
haven
isn
ma
mightn
mustn
needn
shan
shouldn
wasn
weren
won
wouldn
don't
didn't
doesn't
isn't
wasn't
weren't
can't
couldn't
won't
wouldn't
shouldn't
haven't
hasn't
hadn't
aren't
it's
i'm
i've
i'd
i'll
you're
you've
we're
they're
that's
there's
he's
she's
let's
)__";

// data/function_words.txt
inline constexpr std::string_view kFunctionWords = R"__(# function words removed by the topic content filter (stoplist mode)
i
me
my
myself
we
our
ours
ourselves
you
your
yours
yourself
yourselves
he
him
his
himself
she
her
hers
herself
it
its
itself
they
them
their
theirs
themselves
what
which
who
whom
this
that
these
those
am
is
are
was
were
be
been
being
have
has
had
having
do
does
did
doing
a
an
the
and
but
if
or
because
as
until
while
of
at
by
for
with
about
against
between
into
through
during
before
after
above
below
to
from
up
down
in
out
on
off
over
under
again
further
then
once
here
there
when
where
why
how
all
any
both
each
few
more
most
other
some
such
no
nor
not
only
own
same
so
than
too
very
s
t
can
will
just
don
should
now
d
ll
m
o
re
ve
y
ain
aren
couldn
didn
doesn
hadn
hasn
haven
isn
ma
mightn
mustn
needn
shan
shouldn
wasn
weren
won
wouldn
don't
didn't
doesn't
isn't
wasn't
weren't
can't
couldn't
won't
wouldn't
shouldn't
haven't
hasn't
hadn't
aren't
it's
i'm
i've
i'd
i'll
you're
you've
we're
they're
that's
there's
he's
she's
let's
would
could
might
must
shall
may
also
really
even
still
ever
never
always
yet
though
although
unless
whether
upon
within
without
onto
toward
towards
across
around
behind
beside
besides
beyond
among
amongst
along
via
per
like
um
uh
oh
yeah
ok
okay
well
anyway
somehow
someone
somebody
something
anyone
anybody
anything
everyone
everybody
everything
nobody
nothing
none
one
ones
us
'll
's
're
've
'd
'm
n't
)__";

// data/blocklist.txt
inline constexpr std::string_view kDreamBlocklist = R"__(# words whose presence removes an n-gram feature
dream
dreamer
dreamt
dreamed
dreams
awake
awaken
woke
)__";

// data/connectives.txt
inline constexpr std::string_view kConnectives = R"__(# Explicit discourse connectives, one per line, tokens separated by spaces.
# Lines beginning with "#" are comments. "and" is deliberately absent.
#
#@frequent
but
since
until
though
after
although
when
so that
however
even though
once
so
or
even if
earlier
then
before
finally
while
because
if
later
as
still
if then
instead
also
yet
#@other
for example
for instance
in addition
meanwhile
thus
therefore
indeed
in fact
moreover
nevertheless
nonetheless
as soon as
unless
whereas
previously
afterward
subsequently
as long as
in turn
otherwise
ultimately
rather
similarly
in contrast
as though
as a result
furthermore
consequently
next
thereafter
as if
now that
)__";

// data/pos_lexicon.tsv
inline constexpr std::string_view kPosLexicon = R"__(# word<TAB>tag; tags: N V ADJ ADV PRON DET PREP CONJ AUX PART INTJ
'd	AUX
'll	AUX
'm	AUX
're	AUX
's	AUX
've	AUX
a	DET
able	ADJ
about	PREP
above	PREP
across	PREP
afraid	ADJ
after	PREP
afterward	ADV
again	ADV
against	PREP
all	DET
almost	ADV
along	PREP
already	ADV
also	ADV
although	CONJ
always	ADV
am	AUX
among	PREP
an	DET
and	CONJ
angry	ADJ
another	DET
any	DET
anybody	PRON
anyone	PRON
anything	PRON
anywhere	ADV
appear	V
are	AUX
around	PREP
arrive	V
as	CONJ
ask	V
at	PREP
ate	V
away	ADV
baby	N
back	ADV
bad	ADJ
bark	V
bath	N
bathroom	N
be	AUX
beautiful	ADJ
because	CONJ
bed	N
been	AUX
before	PREP
began	V
begin	V
begun	V
behind	PREP
being	AUX
believe	V
below	PREP
beside	PREP
besides	PREP
best	ADJ
better	ADJ
between	PREP
beyond	PREP
big	ADJ
black	ADJ
blue	ADJ
body	N
book	N
boss	N
both	DET
bought	V
boy	N
break	V
briefcase	N
bright	ADJ
bring	V
broke	V
broken	V
brother	N
brought	V
brown	ADJ
build	V
building	N
built	V
bus	N
but	CONJ
buy	V
by	PREP
call	V
calm	ADJ
came	V
can	AUX
car	N
carry	V
cat	N
catch	V
caught	V
certain	ADJ
change	V
chase	V
child	N
children	N
choose	V
chose	V
chosen	V
church	N
city	N
class	N
clean	V
clear	ADJ
climb	V
clutch	V
cold	ADJ
college	N
come	V
coming	V
consider	V
continue	V
cook	V
cool	ADJ
could	AUX
create	V
cry	V
cut	V
dad	N
dance	V
dark	ADJ
day	N
decide	V
did	AUX
die	V
different	ADJ
do	AUX
doctor	N
does	AUX
dog	N
doing	AUX
door	N
down	PREP
drank	V
dream	V
dreamt	V
drink	V
drive	V
driven	V
drove	V
drunk	V
dry	ADJ
during	PREP
each	DET
early	ADJ
eat	V
eaten	V
either	DET
empty	ADJ
enter	V
even	ADV
evening	N
ever	ADV
every	DET
everybody	PRON
everyone	PRON
everything	PRON
everywhere	ADV
expect	V
eye	N
eyes	N
face	N
fall	V
fallen	V
false	ADJ
family	N
fast	ADJ
father	N
fear	V
feel	V
fell	V
felt	V
few	DET
fight	V
finally	ADV
find	V
first	ADJ
flew	V
floor	N
flown	V
fly	V
follow	V
food	N
for	PREP
fought	V
found	V
free	ADJ
friend	N
from	PREP
full	ADJ
game	N
gave	V
get	V
girl	N
give	V
given	V
go	V
going	V
gone	V
good	ADJ
got	V
gotten	V
great	ADJ
green	ADJ
grew	V
grow	V
grown	V
guide	V
had	AUX
hand	N
handle	V
happen	V
happy	ADJ
has	AUX
hate	V
have	AUX
having	AUX
he	PRON
head	N
hear	V
heard	V
held	V
help	V
her	PRON
here	ADV
hers	PRON
herself	PRON
hey	INTJ
hid	V
hidden	V
hide	V
high	ADJ
him	PRON
himself	PRON
his	PRON
hit	V
hold	V
home	ADV
hope	V
hospital	N
hot	ADJ
house	N
however	ADV
hug	V
huge	ADJ
hurry	V
husband	N
i	PRON
if	CONJ
important	ADJ
in	PREP
include	V
instead	ADV
into	PREP
is	AUX
it	PRON
its	PRON
itself	PRON
job	N
jump	V
just	ADV
kick	V
kill	V
kiss	V
kitchen	N
knew	V
know	V
known	V
large	ADJ
last	ADJ
late	ADJ
later	ADV
laugh	V
lead	V
learn	V
leave	V
led	V
left	V
less	DET
letter	N
life	N
like	PREP
little	ADJ
live	V
long	ADJ
look	V
lose	V
lost	V
loud	ADJ
love	V
low	ADJ
made	V
make	V
man	N
many	DET
marry	V
may	AUX
maybe	ADV
me	PRON
meanwhile	ADV
meet	V
men	N
met	V
might	AUX
mine	PRON
mom	N
money	N
month	N
months	N
more	DET
morning	N
most	DET
mother	N
move	V
movie	N
much	DET
must	AUX
my	PRON
myself	PRON
n't	PART
near	PREP
need	V
neither	DET
never	ADV
new	ADJ
next	ADJ
nice	ADJ
night	N
no	DET
nobody	PRON
nor	CONJ
not	PART
nothing	PRON
notice	V
now	ADV
nowhere	ADV
of	PREP
off	PREP
offer	V
office	N
often	ADV
oh	INTJ
ok	INTJ
okay	INTJ
old	ADJ
on	PREP
once	ADV
one	PRON
ones	PRON
only	ADV
onto	PREP
open	V
or	CONJ
other	ADJ
our	PRON
ours	PRON
ourselves	PRON
out	PREP
over	PREP
own	ADJ
paid	V
paper	N
papers	N
party	N
pass	V
past	PREP
pay	V
people	N
perhaps	ADV
person	N
phone	N
place	N
play	V
please	INTJ
president	N
provide	V
pull	V
push	V
quiet	ADJ
quite	ADV
rain	V
raise	V
ran	V
rather	ADV
reach	V
read	V
real	ADJ
realize	V
really	ADV
recall	V
red	ADJ
remain	V
remember	V
report	V
require	V
return	V
ride	V
riding	V
right	ADJ
rode	V
room	N
run	V
running	V
rush	V
sad	ADJ
said	V
same	ADJ
sang	V
sat	V
saw	V
say	V
scared	ADJ
school	N
scream	V
see	V
seeing	V
seem	V
seen	V
sell	V
send	V
sent	V
serve	V
set	V
several	DET
shall	AUX
she	PRON
short	ADJ
should	AUX
shout	V
show	V
shower	N
sign	N
since	CONJ
sing	V
sink	N
sister	N
sit	V
sleep	V
slept	V
slow	ADJ
small	ADJ
smile	V
so	CONJ
sold	V
some	DET
somebody	PRON
someone	PRON
something	PRON
sometimes	ADV
somewhere	ADV
soon	ADV
speak	V
spend	V
spent	V
spoke	V
spoken	V
stand	V
start	V
stay	V
still	ADV
stood	V
stop	V
store	N
strange	ADJ
street	N
strong	ADJ
student	N
such	DET
suddenly	ADV
suggest	V
sung	V
sure	ADJ
swam	V
swim	V
table	N
take	V
taken	V
talk	V
taught	V
teach	V
teacher	N
tell	V
than	CONJ
thanks	INTJ
that	PRON
the	DET
their	PRON
theirs	PRON
them	PRON
themselves	PRON
then	ADV
there	ADV
therefore	ADV
these	PRON
they	PRON
thing	N
things	N
think	V
this	PRON
those	PRON
though	CONJ
thought	V
threw	V
through	PREP
throw	V
thrown	V
thus	ADV
time	N
tiny	ADJ
tired	ADJ
to	PREP
today	ADV
together	ADV
toilet	N
told	V
tomorrow	ADV
tonight	ADV
too	ADV
took	V
toward	PREP
towards	PREP
town	N
train	N
true	ADJ
try	V
turn	V
ugly	ADJ
uh	INTJ
um	INTJ
uncertain	ADJ
under	PREP
understand	V
understood	V
unless	CONJ
until	CONJ
up	PREP
upon	PREP
us	PRON
very	ADV
via	PREP
visit	V
wait	V
wake	V
walk	V
wall	N
want	V
warm	ADJ
was	AUX
wash	V
watch	V
water	N
way	N
we	PRON
weak	ADJ
wear	V
week	N
weird	ADJ
well	ADV
went	V
were	AUX
wet	ADJ
what	PRON
when	CONJ
where	CONJ
whereas	CONJ
whether	CONJ
which	PRON
while	CONJ
white	ADJ
who	PRON
whole	ADJ
whom	PRON
whose	PRON
wife	N
will	AUX
win	V
window	N
with	PREP
within	PREP
without	PREP
woke	V
woman	N
women	N
won	V
wonder	V
wore	V
work	N
worn	V
worry	V
worse	ADJ
worst	ADJ
would	AUX
wow	INTJ
write	V
written	V
wrong	ADJ
wrote	V
yeah	INTJ
year	N
years	N
yell	V
yellow	ADJ
yes	INTJ
yesterday	ADV
yet	CONJ
you	PRON
young	ADJ
your	PRON
yours	PRON
yourself	PRON
yourselves	PRON
somehow	ADV
monday	N
tuesday	N
wednesday	N
thursday	N
friday	N
saturday	N
sunday	N
weekend	N
)__";

}  // namespace storyscope::resources
