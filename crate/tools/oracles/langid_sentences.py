# Sentences for the language-identification parity fixture.
SENTENCES = {
"en": [
 "I find it very life affirming; transforming such simple ingredients into something so rich and complex.",
 "The committee will publish its final report early next year.",
 "Please make sure the windows are closed before you leave the office.",
 "She has been working as a nurse at the local hospital for twenty years.",
 "We missed the last train and had to walk all the way home.",
 "The new bridge is expected to reduce traffic in the city centre.",
 "Could you tell me where the nearest pharmacy is?",
 "Scientists have discovered a new species of frog in the rainforest.",
 "He forgot his umbrella again, so he arrived soaking wet.",
 "The museum is closed on Mondays and public holidays.",
 "Our neighbours are planning a small party for the weekend.",
 "The price of fresh vegetables has risen sharply this winter.",
 "If you need any help with the homework, just give me a call.",
 "The football match was cancelled because of heavy snow.",
 "Most of the students passed the exam without any difficulty.",
 "I better get some motorbikes fixed, or else!",
 "Apparently there are only two levels that have not been completed in the original game.",
 "The company announced that it would hire two hundred new employees.",
 "My grandmother still writes letters by hand every Sunday.",
 "They spent the whole afternoon walking along the beach.",
 "The government is under pressure to lower taxes for small businesses.",
 "This recipe only needs flour, water, salt and a little patience.",
 "The library has extended its opening hours during the exam period.",
 "Remember to water the plants while I am away on holiday.",
 "The concert was so loud that my ears were ringing afterwards.",
 "We are looking forward to hearing from you soon.",
 "The old castle on the hill attracts thousands of tourists every summer.",
 "He explained the rules of the game very patiently to the children.",
 "Rents have risen by an average of six percent per year.",
 "The airport was crowded with families going on holiday.",
 "Nobody knows exactly why the experiment failed.",
 "The weather forecast says it will rain for the rest of the week.",
 "Reading before bed helps me fall asleep more quickly.",
 "The farmers are worried about the lack of rain this spring.",
],
"de": [
 "Ich finde es sehr lebensbejahend; aus so einfachen Zutaten etwas so Reichhaltiges und Komplexes zu machen. Wie bei der Geburt eines Kindes.",
 "Offensichtlich gibt es nur zwei Ebenen, die im Original-Super-Mario-Maker noch nicht abgeschlossen wurden.",
 "Ich sollte besser ein paar Motorräder reparieren lassen, oder aber!",
 "Die Mieten sind in den letzten Jahren um durchschnittlich sechs Prozent pro Jahr gestiegen.",
 "Morgen fahren wir mit dem Zug nach München zu meinen Großeltern.",
 "Kannst du mir bitte sagen, wo der nächste Bahnhof ist?",
 "Das Wetter war am Wochenende leider sehr schlecht.",
 "Die Regierung hat neue Maßnahmen gegen die Inflation angekündigt.",
 "Wir haben den ganzen Nachmittag im Garten gearbeitet.",
 "Meine Schwester studiert seit zwei Jahren Medizin in Berlin.",
 "Der Film war spannender, als ich erwartet hatte.",
 "Bitte vergiss nicht, die Blumen zu gießen, während ich weg bin.",
 "Die Kinder spielen jeden Nachmittag auf dem Spielplatz hinter der Schule.",
 "Im Winter ist es hier oft neblig und kalt.",
 "Der Zug hatte wegen eines technischen Problems eine Stunde Verspätung.",
 "Wir freuen uns darauf, bald von Ihnen zu hören.",
 "Das Museum ist montags und an Feiertagen geschlossen.",
 "Er hat seinen Regenschirm schon wieder im Büro vergessen.",
 "Die Preise für frisches Gemüse sind in diesem Winter stark gestiegen.",
 "Ohne Wasser können die Pflanzen nicht überleben.",
 "Die Bibliothek hat ihre Öffnungszeiten während der Prüfungszeit verlängert.",
 "Unsere Nachbarn planen am Samstag ein kleines Fest.",
 "Die Wissenschaftler haben eine neue Froschart im Regenwald entdeckt.",
 "Ich trinke morgens immer zuerst eine Tasse Kaffee.",
 "Das Fußballspiel wurde wegen starken Schneefalls abgesagt.",
 "Die meisten Schüler haben die Prüfung ohne Schwierigkeiten bestanden.",
 "Könnten Sie das Fenster bitte schließen? Es zieht.",
 "Die alte Burg auf dem Hügel zieht jeden Sommer viele Touristen an.",
 "Niemand weiß genau, warum das Experiment gescheitert ist.",
 "Laut Wetterbericht soll es die ganze Woche regnen.",
 "Die Bauern machen sich Sorgen wegen der Trockenheit in diesem Frühjahr.",
 "Wie bei der Geburt eines Kindes.",
 "Sehr traurig, wenn man bedenkt, dass diese Vorschläge die Mieten um bis zu 15 Prozent erhöhen würden.",
 "Er erklärte den Kindern geduldig die Regeln des Spiels.",
],
"cs": [
 "Zítra ráno pojedeme vlakem do Brna navštívit babičku.",
 "Můžete mi prosím říct, kde je nejbližší lékárna?",
 "Vláda oznámila nová opatření proti rostoucí inflaci.",
 "Celé odpoledne jsme pracovali na zahradě za domem.",
 "Moje sestra studuje už dva roky medicínu v Praze.",
 "Ten film byl napínavější, než jsem čekal.",
 "Nezapomeň prosím zalévat květiny, když budu pryč.",
 "Děti si každé odpoledne hrají na hřišti za školou.",
 "V zimě je tady často mlha a zima.",
 "Vlak měl kvůli technické poruše hodinové zpoždění.",
 "Těšíme se, že se nám brzy ozvete.",
 "Muzeum je v pondělí a o svátcích zavřené.",
 "Zase zapomněl deštník v kanceláři.",
 "Ceny čerstvé zeleniny letos v zimě prudce vzrostly.",
 "Bez vody rostliny nemohou přežít.",
 "Knihovna prodloužila otevírací dobu během zkouškového období.",
 "Naši sousedé plánují na sobotu malou oslavu.",
 "Vědci objevili v deštném pralese nový druh žáby.",
 "Ráno vždycky nejdřív vypiju šálek kávy.",
 "Fotbalový zápas byl kvůli hustému sněžení zrušen.",
 "Většina studentů složila zkoušku bez problémů.",
 "Mohl byste prosím zavřít okno? Táhne tady.",
 "Starý hrad na kopci každé léto přitahuje tisíce turistů.",
 "Nikdo přesně neví, proč pokus selhal.",
 "Podle předpovědi počasí bude celý týden pršet.",
 "Zemědělci se obávají sucha, které letos na jaře panuje.",
 "Trpělivě dětem vysvětlil pravidla hry.",
 "Nájemné v posledních letech rostlo v průměru o šest procent ročně.",
 "Letiště bylo plné rodin, které odjížděly na dovolenou.",
 "Čtení před spaním mi pomáhá rychleji usnout.",
 "Společnost oznámila, že přijme dvě stě nových zaměstnanců.",
 "Moje babička stále každou neděli píše dopisy rukou.",
 "Koncert byl tak hlasitý, že mi potom zvonilo v uších.",
],
"uk": [
 "Завтра вранці ми поїдемо потягом до Львова до бабусі.",
 "Чи не могли б ви сказати, де найближча аптека?",
 "Уряд оголосив нові заходи проти зростання інфляції.",
 "Увесь день ми працювали в саду за будинком.",
 "Моя сестра вже два роки вивчає медицину в Києві.",
 "Цей фільм був цікавішим, ніж я очікував.",
 "Будь ласка, не забувай поливати квіти, поки мене не буде.",
 "Діти щодня граються на майданчику за школою.",
 "Взимку тут часто туман і холодно.",
 "Потяг запізнився на годину через технічну несправність.",
 "Ми з нетерпінням чекаємо на вашу відповідь.",
 "Музей зачинений у понеділок і у святкові дні.",
 "Він знову забув свою парасольку в офісі.",
 "Ціни на свіжі овочі цієї зими різко зросли.",
 "Без води рослини не можуть вижити.",
 "Бібліотека подовжила години роботи під час сесії.",
 "Наші сусіди планують невелике свято на суботу.",
 "Науковці виявили новий вид жаби в тропічному лісі.",
 "Вранці я завжди спочатку випиваю чашку кави.",
 "Футбольний матч скасували через сильний снігопад.",
 "Більшість студентів склали іспит без труднощів.",
 "Чи не могли б ви зачинити вікно? Тут протяг.",
 "Старий замок на пагорбі щоліта приваблює тисячі туристів.",
 "Ніхто точно не знає, чому експеримент не вдався.",
 "За прогнозом погоди дощ ітиме весь тиждень.",
 "Фермери занепокоєні посухою цієї весни.",
 "Він терпляче пояснив дітям правила гри.",
 "Орендна плата останніми роками зростала в середньому на шість відсотків на рік.",
 "Аеропорт був переповнений родинами, які їхали у відпустку.",
 "Читання перед сном допомагає мені швидше заснути.",
 "Компанія оголосила, що найме двісті нових працівників.",
 "Моя бабуся досі щонеділі пише листи від руки.",
 "Концерт був такий гучний, що в мене потім дзвеніло у вухах.",
],
"zh": [
 "你好，世界",
 "明天早上我们坐火车去看奶奶。",
 "请问最近的药店在哪里？",
 "政府宣布了应对通货膨胀的新措施。",
 "我们整个下午都在房子后面的花园里干活。",
 "我姐姐在北京学医已经两年了。",
 "这部电影比我想象的更精彩。",
 "我不在的时候，请别忘了给花浇水。",
 "孩子们每天下午都在学校后面的操场上玩。",
 "冬天这里经常有雾，而且很冷。",
 "由于技术故障，火车晚点了一个小时。",
 "我们期待尽快收到您的回复。",
 "博物馆周一和节假日闭馆。",
 "他又把雨伞忘在办公室了。",
 "今年冬天新鲜蔬菜的价格大幅上涨。",
 "没有水，植物就无法生存。",
 "考试期间图书馆延长了开放时间。",
 "我们的邻居打算周六办一个小聚会。",
 "科学家在热带雨林中发现了一种新的青蛙。",
 "我每天早上总是先喝一杯咖啡。",
 "足球比赛因为大雪被取消了。",
 "大多数学生都顺利通过了考试。",
 "你能把窗户关上吗？这里有风。",
 "山上的古堡每年夏天都吸引成千上万的游客。",
 "没有人确切知道实验为什么失败了。",
 "天气预报说整个星期都会下雨。",
 "农民们担心今年春天的干旱。",
 "他耐心地向孩子们解释了游戏规则。",
 "近年来房租平均每年上涨百分之六。",
 "机场挤满了去度假的家庭。",
 "睡前阅读能帮助我更快入睡。",
 "公司宣布将招聘两百名新员工。",
 "音乐会太吵了，之后我的耳朵一直嗡嗡作响。",
],
"ru": [
 "Завтра утром мы поедем на поезде к бабушке в Москву.",
 "Не могли бы вы сказать, где ближайшая аптека?",
 "Правительство объявило новые меры против роста инфляции.",
 "Весь день мы работали в саду за домом.",
 "Моя сестра уже два года изучает медицину в Петербурге.",
 "Этот фильм оказался интереснее, чем я ожидал.",
 "Пожалуйста, не забывай поливать цветы, пока меня не будет.",
 "Дети каждый день играют на площадке за школой.",
 "Зимой здесь часто бывает туман и холодно.",
 "Поезд опоздал на час из-за технической неисправности.",
 "Мы с нетерпением ждём вашего ответа.",
 "Музей закрыт по понедельникам и в праздничные дни.",
 "Он опять забыл свой зонтик в офисе.",
 "Цены на свежие овощи этой зимой резко выросли.",
 "Без воды растения не могут выжить.",
 "Библиотека продлила часы работы во время сессии.",
 "Наши соседи планируют небольшой праздник на субботу.",
 "Учёные обнаружили новый вид лягушки в тропическом лесу.",
 "По утрам я всегда сначала выпиваю чашку кофе.",
 "Футбольный матч отменили из-за сильного снегопада.",
 "Большинство студентов сдали экзамен без труда.",
 "Не могли бы вы закрыть окно? Здесь сквозняк.",
 "Старый замок на холме каждое лето привлекает тысячи туристов.",
 "Никто точно не знает, почему эксперимент не удался.",
 "По прогнозу погоды дождь будет идти всю неделю.",
 "Фермеры обеспокоены засухой этой весной.",
 "Он терпеливо объяснил детям правила игры.",
 "Арендная плата в последние годы росла в среднем на шесть процентов в год.",
 "Аэропорт был переполнен семьями, которые ехали в отпуск.",
 "Чтение перед сном помогает мне быстрее заснуть.",
 "Компания объявила, что наймёт двести новых сотрудников.",
 "Моя бабушка до сих пор каждое воскресенье пишет письма от руки.",
 "Концерт был таким громким, что потом у меня звенело в ушах.",
],
}
