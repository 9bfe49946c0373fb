#include "cipherid/wiring.hpp"

// Default wiring tables. Byte-identical copies of data/wirings/*.txt;
// a unit test keeps the two in sync.

namespace cipherid::machines {

const char* const kDefaultEnigmaWiringText = R"WIRE(# machine: enigma
# version: 1
# format: <kind> <name> <permutation> [notch letters]
rotor I EKMFLGDQVZNTOWYHXUSPAIBRCJ Q
rotor II AJDKSIRUXBLHWTMCQGZNPYFVOE E
rotor III BDFHJLCPRTXVZNYEIWGAKMUSQO V
rotor IV ESOVPZJAYQUIRHXLNFTGKDCMWB J
rotor V VZBRGITYUPSDNHLXAWMJQOFECK Z
reflector UKW-A EJMZALYXVBWFCRQUONTSPIKHGD
reflector UKW-B YRUHQSLDPXNGOKMIEBFZCWVJAT
stator ETW ABCDEFGHIJKLMNOPQRSTUVWXYZ
)WIRE";

const char* const kDefaultSigabaWiringText = R"WIRE(# machine: sigaba
# version: 1
# format: rotor <name> <permutation> | index <name> <digits>
#         control-map <26 digits A..Z> | step-map <10 digits>
rotor R0 YCHLQSUGBDIXNZKERPVJTAWFOM
rotor R1 INPXBWETGUYSAOCHVLDMQKZJFR
rotor R2 WNDRIOZPTAXHFJYQBMSVEKUCGL
rotor R3 TZGHOBKRVUXLQDMPNFWCJYEIAS
rotor R4 YWTAHRQJVLCEXUNGBIPZMSDFOK
rotor R5 QSLRBTEKOGAICFWYVMHJNXZUDP
rotor R6 CHJDQIGNBSAKVTUOXFWLEPRMZY
rotor R7 CDFAJXTIMNBEQHSUGRYLWZKVPO
rotor R8 XHFESZDNRBCGKQIJLTVMUOYAPW
rotor R9 EZJQXMOGYTCSFRIUPVNADLHWBK
index I0 7591482630
index I1 3810592764
index I2 4086153297
index I3 3980526174
index I4 6497135280
control-map 91233444555666677777888888
step-map 1554433221
)WIRE";

const char* const kDefaultPurpleWiringText = R"WIRE(# machine: purple
# version: 1
# format: sixes-letters <6 letters> | sixes <perm of ABCDEF>
#         twenties-<n> <perm of A..T>, 25 lines per switch
sixes-letters AEIOUY
sixes EBACFD
sixes DFBCAE
sixes CEFBAD
sixes BCFEDA
sixes FECBAD
sixes BACDEF
sixes FABEDC
sixes FAEBDC
sixes FCDABE
sixes CDEAFB
sixes CBFAED
sixes CDAFEB
sixes BECAFD
sixes EACBFD
sixes FCABED
sixes DEACFB
sixes BFEADC
sixes EBADCF
sixes EBCAFD
sixes EAFBCD
sixes BDAECF
sixes CBDAFE
sixes DABFEC
sixes ABFDEC
sixes FDEABC
twenties-1 CEBPOMNFQHTRDSLJGAIK
twenties-1 AOMBSFJNDETKRGHPCILQ
twenties-1 GAECDNJKPHFQTLOIRBSM
twenties-1 AKFHIRJEGNSOCMTLDBQP
twenties-1 EKQNGPSJTIOBLMCHDRFA
twenties-1 FBLKIRPMAECOSQHNDGJT
twenties-1 LCQGFBEDMPSOARJHKNTI
twenties-1 FBJLMNQHIKRGEACTPOSD
twenties-1 GDMJNBLETHIAKSPCORQF
twenties-1 RNGSDKPLJEBFAHCOMTQI
twenties-1 EGQBDIFASJNORMHLTKCP
twenties-1 FGHMDLRTJEASNOBKCQPI
twenties-1 TNGOBHFRSLDJKCIPAQME
twenties-1 MTRADBSEFIGLJHCPONKQ
twenties-1 PCTKFAHMJQLGBSDERION
twenties-1 DNBSFOCMATHJGLERQIPK
twenties-1 ETHPOCJAIRSFQNLMKBGD
twenties-1 APCQHBETFGMNSDKIORLJ
twenties-1 PIBJSTGDRMHOQFKEACLN
twenties-1 NFHAOKLEMBCIDSRTGQPJ
twenties-1 CKEISPQNRMADJBOLHGFT
twenties-1 DNBSFMIKELHGTQRAJCPO
twenties-1 OEMJQRPCLITFGBAKSNHD
twenties-1 EPKNSMGJOITALDBCHRFQ
twenties-1 PNBKTSAMQLCIRDFHOGJE
twenties-2 NPGSALKHMDBICJQOETRF
twenties-2 QCTFGIMKEHLAPJRBDOSN
twenties-2 LHRGJSNTEQPFOBAKCDMI
twenties-2 QJDOAMGTIFELBRSPNKCH
twenties-2 JCDSALQMTKHROEPGNBIF
twenties-2 NEPDCKQOHMTRSLFGJIAB
twenties-2 EFMCPGJDOLTHBRAINSKQ
twenties-2 DAPMLGISFEROTKNBJHCQ
twenties-2 QBIKMGSDPRJNHLFACTOE
twenties-2 DTFJKCINSQABEHLMOPGR
twenties-2 OEKJRTNASDHILCFGPQBM
twenties-2 INJFOCKQELBPGTAMRHSD
twenties-2 IAMGFHSJNKLOTQBPERDC
twenties-2 RQFGLADEHOPNKIBMCJTS
twenties-2 FOKAGDMQBCHLNJIPRETS
twenties-2 LODPRQEBHISKJFGMCTAN
twenties-2 MQOPRSHNFKATBEICJLDG
twenties-2 SGHMPLIKQRECBJFNOATD
twenties-2 HJNPOAIDGMQEBLSTRKFC
twenties-2 FGLNKAJMPRDQCEISOHTB
twenties-2 TASDPJNMQKLCFGHOERIB
twenties-2 PDIHJAELNSOFCTBKMGQR
twenties-2 EJKHGSPDAQFRILNCOTMB
twenties-2 TDBJNLFKHSIPGEOQCRMA
twenties-2 OMAGTPSLDKCQHBFEJNRI
twenties-3 KEODHJFMSPRLBTANCIGQ
twenties-3 QRFESCGBITJMLHANKODP
twenties-3 IELRMONBPDKSCGAFHJTQ
twenties-3 ICFGLJHMEQKNSTORBAPD
twenties-3 QFHSJLMENKCTGRABDOIP
twenties-3 QKCTIORSHDMNBLFPEGJA
twenties-3 GPNLSHMKEATDIBQCOJRF
twenties-3 DGOQFMEICSNHALBPJRKT
twenties-3 QOKDRBTSLHAMNIPFJGEC
twenties-3 DKMRIACGBTLJOHEQFNPS
twenties-3 NTDFQLAJGIEBMPKORCHS
twenties-3 FGNTBOMRILKDPQCESAJH
twenties-3 GJTQMKSCROHBNPLIDAEF
twenties-3 LDERHQTGINKMFPOJSABC
twenties-3 MJFOPTLCQRSBAKIDENGH
twenties-3 FLPGOTMSCDHEAIBKRNJQ
twenties-3 IEMONJSQGBHLRPTCDFKA
twenties-3 JKAMOPNFTERILHDGQSCB
twenties-3 LQNJBADHCIKTPSGOFMRE
twenties-3 ILCEBPGRDHFTKOANQSMJ
twenties-3 FTKQSCORNDGJAMBLIEHP
twenties-3 LSRKFIEBGNQOMPJATHDC
twenties-3 COLBHFDGRQEKNTSPIJAM
twenties-3 MOJGIAKPSHNETFLCBRQD
twenties-3 RKTINEMGPDFJOAQLSHBC
)WIRE";

const char* const kDefaultTypexWiringText = R"WIRE(# machine: typex
# version: 1
# format: rotor <name> <permutation> <notch letters> | reflector <name> <permutation>
rotor T1 MSGAIXBZPDENHLORCYJVWTUKFQ DGKPQUVYZ
rotor T2 CPAXQGJSUWOFMIYZKTLEHRBDNV CDEJKLNRV
rotor T3 ASGTLIPJEVMUODBKHNZXRYFWCQ CGHNOPWXY
rotor T4 JODXZTAQPYBIVFMWCERSKNUGLH BEFGHILUZ
rotor T5 JULHPOMXAQZIYVTERDSBKCNFWG GHJKQRUWZ
rotor T6 YMBWGAEDHSZJVLKXNRQICPTFUO EHJOSVWXZ
rotor T7 EPFIULYGHOVRMAKXSWJBTZQDNC ACJLNRTUV
rotor T8 CSUWQBMJVNHEXZGIRPDALFTOKY AEGLOSVWY
reflector TRF NWHPOIRCFSLKYAEDVGJZXQBUMT
)WIRE";

}  // namespace cipherid::machines
